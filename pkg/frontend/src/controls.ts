/**
 * User-input handling: turns UI events into view-state changes and, when
 * the simulation is involved, into protocol control messages.
 *
 * Local-only inputs (camera, KnowWhere, layer toggles, node selection)
 * never reach the server. The K slider is debounced so dragging emits
 * exactly one set_geo_weight per settled value.
 */

import { ControlMessage } from "./protocol.js";
import {
  ViewState,
  clampGeoWeight,
  clampMinDegree,
} from "./viewState.js";

export type UiEvent =
  | { kind: "slider-k"; value: number }
  | { kind: "preset-k-dominant" }
  | { kind: "filter-min-degree"; value: number }
  | { kind: "toggle-knowwhere" }
  | { kind: "toggle-graph-links" }
  | { kind: "toggle-map" }
  | { kind: "click-node"; nodeId: string }
  | { kind: "click-background" }
  | { kind: "camera"; azimuth?: number; elevation?: number; panX?: number; panY?: number; zoom?: number };

export type Send = (message: ControlMessage) => void;
export type Timer = (callback: () => void, ms: number) => () => void;

const defaultTimer: Timer = (callback, ms) => {
  const handle = setTimeout(callback, ms);
  return () => clearTimeout(handle);
};

/**
 * Debounces a numeric control: rapid updates collapse into one message
 * carrying the last value once it settles. A repeated identical settled
 * value is not re-sent.
 */
export class DebouncedEmitter {
  private cancel: (() => void) | null = null;
  private pending: number | null = null;
  private lastSent: number | null = null;

  constructor(
    private readonly emit: (value: number) => void,
    private readonly delayMs: number = 150,
    private readonly timer: Timer = defaultTimer,
  ) {}

  update(value: number): void {
    this.pending = value;
    this.cancel?.();
    this.cancel = this.timer(() => this.flush(), this.delayMs);
  }

  /** Fire the pending value now (e.g. on slider release). */
  flush(): void {
    this.cancel?.();
    this.cancel = null;
    if (this.pending !== null && this.pending !== this.lastSent) {
      this.lastSent = this.pending;
      this.emit(this.pending);
    }
    this.pending = null;
  }
}

export class InputController {
  readonly kSlider: DebouncedEmitter;
  readonly degreeFilter: DebouncedEmitter;

  constructor(
    private view: ViewState,
    private readonly send: Send,
    private readonly maxDegree: number,
    timer?: Timer,
    sliderDelayMs = 150,
  ) {
    this.kSlider = new DebouncedEmitter(
      (value) => this.send({ type: "set_geo_weight", geo_weight: value }),
      sliderDelayMs,
      timer,
    );
    this.degreeFilter = new DebouncedEmitter(
      (value) => this.send({ type: "set_min_degree", min_degree: value }),
      sliderDelayMs,
      timer,
    );
  }

  get state(): ViewState {
    return this.view;
  }

  handle(event: UiEvent): void {
    switch (event.kind) {
      case "slider-k": {
        const value = clampGeoWeight(event.value);
        this.view = { ...this.view, geoWeight: value };
        this.kSlider.update(value);
        break;
      }
      case "preset-k-dominant": {
        // One click reproduces the "geo-force dominates" scenario.
        this.view = { ...this.view, geoWeight: 10000 };
        this.kSlider.update(10000);
        this.kSlider.flush();
        break;
      }
      case "filter-min-degree": {
        const value = clampMinDegree(event.value, this.maxDegree);
        this.view = { ...this.view, minDegree: value };
        this.degreeFilter.update(value);
        break;
      }
      case "toggle-knowwhere":
        // Pure client-side layer visibility; no server round-trip.
        this.view = { ...this.view, knowWhere: !this.view.knowWhere };
        break;
      case "toggle-graph-links":
        this.view = { ...this.view, showGraphLinks: !this.view.showGraphLinks };
        break;
      case "toggle-map":
        this.view = { ...this.view, showMap: !this.view.showMap };
        break;
      case "click-node":
        this.view = { ...this.view, selectedNodeId: event.nodeId };
        break;
      case "click-background":
        this.view = { ...this.view, selectedNodeId: null };
        break;
      case "camera":
        this.view = {
          ...this.view,
          camera: {
            azimuth: event.azimuth ?? this.view.camera.azimuth,
            elevation: event.elevation ?? this.view.camera.elevation,
            panX: event.panX ?? this.view.camera.panX,
            panY: event.panY ?? this.view.camera.panY,
            zoom: event.zoom ?? this.view.camera.zoom,
          },
        };
        break;
    }
  }
}
