/**
 * Client-side view state: everything the user can change that is not
 * simulation state. The scene builder is a pure function of
 * (latest frame, view state), so this object fully captures the UI.
 */

export interface CameraPose {
  /** Orbit angles in degrees around the map center. */
  azimuth: number;
  elevation: number;
  /** Pan offset in map units. */
  panX: number;
  panY: number;
  /** Distance from the orbit target, in map units. */
  zoom: number;
}

export interface ViewState {
  camera: CameraPose;
  /** K slider position; emitted to the service as set_geo_weight. */
  geoWeight: number;
  /** Minimum node degree to show; emitted as set_min_degree. */
  minDegree: number;
  /** KnowWhere: show the geo-link lines from nodes to their anchors. */
  knowWhere: boolean;
  selectedNodeId: string | null;
  showGraphLinks: boolean;
  showGeoLinks: boolean;
  showMap: boolean;
}

/** Linear slider range; the "dominant" preset sits outside it. */
export const K_SLIDER_MAX = 50;
export const K_DOMINANT_PRESET = 10000;

export function defaultViewState(): ViewState {
  return {
    camera: { azimuth: 0, elevation: 45, panX: 0, panY: 0, zoom: 400 },
    geoWeight: 5,
    minDegree: 0,
    knowWhere: true,
    selectedNodeId: null,
    showGraphLinks: true,
    showGeoLinks: true,
    showMap: true,
  };
}

const clamp = (value: number, lo: number, hi: number) =>
  Math.min(hi, Math.max(lo, value));

/** Clamp a slider value into [0, K_SLIDER_MAX]; the dominant preset passes through. */
export function clampGeoWeight(value: number): number {
  if (value === K_DOMINANT_PRESET) return value;
  return clamp(value, 0, K_SLIDER_MAX);
}

export function clampMinDegree(value: number, maxDegree: number): number {
  return clamp(Math.round(value), 0, maxDegree);
}
