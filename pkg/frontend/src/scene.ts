/**
 * Scene building: (frame, view state, graph document) -> scene graph.
 *
 * The scene graph is plain data, ready for any renderer. Building it is a
 * pure function with no hidden state, so replaying a recorded frame
 * stream with a recorded input script always reproduces the same scene.
 */

import {
  DEFAULT_PROJECTION,
  FrameMessage,
  GraphDocument,
  GraphNode,
  ProjectionConfig,
  projectGeo,
} from "./protocol.js";
import { CameraPose, ViewState } from "./viewState.js";

export type Vec3 = [number, number, number];

export interface SceneNode {
  id: string;
  label: string;
  position: Vec3;
  degree: number;
  selected: boolean;
}

export interface SceneLink {
  source: string;
  target: string;
  from: Vec3;
  to: Vec3;
  weight: number;
}

/** Green line from a node down to its projected map anchor. */
export interface GeoLink {
  nodeId: string;
  from: Vec3;
  to: Vec3;
  color: "green";
}

export interface MapLayer {
  kind: "equirectangular";
  width: number;
  height: number;
  /** Corners in map units, centered on the origin. */
  minX: number;
  minY: number;
}

export interface ProfilePanel {
  nodeId: string;
  label: string;
  attributes: Record<string, string>;
  location: { lat: number; lon: number } | null;
}

export interface Scene {
  iteration: number;
  camera: CameraPose;
  map: MapLayer | null;
  nodes: SceneNode[];
  graphLinks: SceneLink[];
  geoLinks: GeoLink[];
  profile: ProfilePanel | null;
}

export function nodeDegrees(doc: GraphDocument): Map<string, number> {
  const degrees = new Map<string, number>();
  for (const node of doc.nodes) degrees.set(node.id, 0);
  for (const edge of doc.edges) {
    degrees.set(edge.source, (degrees.get(edge.source) ?? 0) + 1);
    degrees.set(edge.target, (degrees.get(edge.target) ?? 0) + 1);
  }
  return degrees;
}

function anchorOf(node: GraphNode, cfg: ProjectionConfig): Vec3 | null {
  if (node.lat === undefined || node.lon === undefined) return null;
  return projectGeo(node.lat, node.lon, cfg);
}

/**
 * Build the scene for one frame. Nodes below the min-degree filter are
 * omitted, along with every link touching them; raising the filter can
 * only shrink the scene. A node missing from the frame (e.g. filtered
 * server-side) is simply not drawn.
 */
export function buildScene(
  frame: FrameMessage,
  view: ViewState,
  doc: GraphDocument,
  cfg: ProjectionConfig = DEFAULT_PROJECTION,
): Scene {
  const degrees = nodeDegrees(doc);
  const visible = new Map<string, Vec3>();
  for (const node of doc.nodes) {
    const position = frame.positions[node.id];
    if (position === undefined) continue;
    if ((degrees.get(node.id) ?? 0) < view.minDegree) continue;
    visible.set(node.id, position);
  }

  const nodes: SceneNode[] = [];
  const geoLinks: GeoLink[] = [];
  let profile: ProfilePanel | null = null;
  for (const node of doc.nodes) {
    const position = visible.get(node.id);
    if (position === undefined) continue;
    nodes.push({
      id: node.id,
      label: node.label ?? "",
      position,
      degree: degrees.get(node.id) ?? 0,
      selected: node.id === view.selectedNodeId,
    });
    if (view.knowWhere && view.showGeoLinks) {
      const anchor = anchorOf(node, cfg);
      if (anchor !== null) {
        geoLinks.push({ nodeId: node.id, from: position, to: anchor, color: "green" });
      }
    }
    if (node.id === view.selectedNodeId) {
      profile = {
        nodeId: node.id,
        label: node.label ?? "",
        attributes: node.attributes ?? {},
        location:
          node.lat !== undefined && node.lon !== undefined
            ? { lat: node.lat, lon: node.lon }
            : null,
      };
    }
  }

  const graphLinks: SceneLink[] = [];
  if (view.showGraphLinks) {
    for (const edge of doc.edges) {
      const from = visible.get(edge.source);
      const to = visible.get(edge.target);
      if (from === undefined || to === undefined) continue;
      graphLinks.push({ source: edge.source, target: edge.target, from, to, weight: edge.weight });
    }
  }

  const map: MapLayer | null = view.showMap
    ? {
        kind: "equirectangular",
        width: cfg.map_width,
        height: cfg.map_height,
        minX: -cfg.map_width / 2,
        minY: -cfg.map_height / 2,
      }
    : null;

  return {
    iteration: frame.iteration,
    camera: { ...view.camera },
    map,
    nodes,
    graphLinks,
    geoLinks,
    profile,
  };
}
