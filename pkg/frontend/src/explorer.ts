/**
 * The explorer ties frames, view state, and the scene builder together.
 *
 * It holds exactly two pieces of state — the latest frame and the view
 * state — and the rendered scene is a pure function of those, so a
 * recorded frame stream plus a recorded input script always reproduces
 * the same final scene.
 */

import { InputController, Send, Timer, UiEvent } from "./controls.js";
import {
  DEFAULT_PROJECTION,
  FrameMessage,
  GraphDocument,
  ProjectionConfig,
} from "./protocol.js";
import { Scene, buildScene, nodeDegrees } from "./scene.js";
import { ViewState, defaultViewState } from "./viewState.js";

export class Explorer {
  private latestFrame: FrameMessage | null = null;
  private readonly controller: InputController;

  constructor(
    private readonly doc: GraphDocument,
    send: Send,
    options: {
      view?: ViewState;
      projection?: ProjectionConfig;
      timer?: Timer;
      sliderDelayMs?: number;
    } = {},
  ) {
    const maxDegree = Math.max(0, ...nodeDegrees(doc).values());
    this.controller = new InputController(
      options.view ?? defaultViewState(),
      send,
      maxDegree,
      options.timer,
      options.sliderDelayMs,
    );
    this.projection = options.projection ?? DEFAULT_PROJECTION;
  }

  private readonly projection: ProjectionConfig;

  get view(): ViewState {
    return this.controller.state;
  }

  ingest(frame: FrameMessage): void {
    // Only the newest frame matters; earlier ones are superseded.
    if (this.latestFrame === null || frame.iteration >= this.latestFrame.iteration) {
      this.latestFrame = frame;
    }
  }

  handleInput(event: UiEvent): void {
    this.controller.handle(event);
  }

  /** Fire any debounced-but-unsent control messages immediately. */
  settleInputs(): void {
    this.controller.kSlider.flush();
    this.controller.degreeFilter.flush();
  }

  scene(): Scene | null {
    if (this.latestFrame === null) return null;
    return buildScene(this.latestFrame, this.view, this.doc, this.projection);
  }
}
