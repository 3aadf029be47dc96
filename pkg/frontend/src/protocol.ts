/**
 * Wire types for the layout service and its document formats.
 *
 * These mirror docs/protocol.md and docs/formats.md in the backend repo;
 * every message the explorer sends or receives is one of these shapes.
 */

// -- graph documents ------------------------------------------------------

export interface GraphNode {
  id: string;
  label?: string;
  lat?: number;
  lon?: number;
  attributes?: Record<string, string>;
}

export interface GraphEdge {
  source: string;
  target: string;
  weight: number;
}

export interface GraphDocument {
  format_version: string;
  nodes: GraphNode[];
  edges: GraphEdge[];
}

export interface ProjectionConfig {
  map_width: number;
  map_height: number;
  anchor_height: number;
}

export const DEFAULT_PROJECTION: ProjectionConfig = {
  map_width: 360,
  map_height: 180,
  anchor_height: 30,
};

/** Equirectangular projection of a geo coordinate onto the map plane. */
export function projectGeo(
  lat: number,
  lon: number,
  cfg: ProjectionConfig,
): [number, number, number] {
  return [
    (lon / 360) * cfg.map_width,
    (lat / 180) * cfg.map_height,
    cfg.anchor_height,
  ];
}

// -- frame stream ---------------------------------------------------------

export interface FrameMessage {
  type: "frame";
  session_id: string;
  iteration: number;
  temperature: number;
  geo_weight: number;
  positions: Record<string, [number, number, number]>;
  snapshot?: boolean;
}

// -- control messages -----------------------------------------------------

export type ControlMessage =
  | { type: "start"; iterations?: number; at_iteration?: number }
  | { type: "pause"; at_iteration?: number }
  | { type: "set_geo_weight"; geo_weight: number; at_iteration?: number }
  | { type: "set_min_degree"; min_degree: number; at_iteration?: number }
  | { type: "reheat"; temperature: number; at_iteration?: number }
  | { type: "request_metrics" }
  | { type: "status" };

export interface StatusPayload {
  ok: boolean;
  session_id: string;
  status: "paused" | "running" | "budget-exhausted";
  iteration: number;
  temperature: number;
  geo_weight: number;
  min_degree: number;
  remaining_iterations: number;
  connected_clients: number;
}

export function parseFrame(raw: string): FrameMessage {
  const parsed = JSON.parse(raw) as FrameMessage;
  if (parsed.type !== "frame") {
    throw new Error(`expected a frame message, got type ${String(parsed.type)}`);
  }
  return parsed;
}
