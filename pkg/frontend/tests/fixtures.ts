import { FrameMessage, GraphDocument } from "../src/protocol.js";
import { Timer } from "../src/controls.js";

/** Four nodes: two anchored, one unanchored, one low-degree outlier. */
export const DOC: GraphDocument = {
  format_version: "1.0",
  nodes: [
    {
      id: "a",
      label: "Alice",
      lat: 45,
      lon: -90,
      attributes: { interest: "epidemiology", affiliation: "Relief Org" },
    },
    { id: "b", label: "Bob", lat: -30, lon: 60 },
    { id: "c", label: "Cara" },
    { id: "d", label: "Dan", lat: 10, lon: 10 },
  ],
  edges: [
    { source: "a", target: "b", weight: 0.9 },
    { source: "a", target: "c", weight: 0.4 },
    { source: "b", target: "c", weight: 0.5 },
    { source: "a", target: "d", weight: 0.2 },
  ],
};

export function frame(
  iteration: number,
  positions: FrameMessage["positions"],
): FrameMessage {
  return {
    type: "frame",
    session_id: "s1",
    iteration,
    temperature: 18 * Math.pow(0.98, iteration),
    geo_weight: 5,
    positions,
  };
}

export const FRAMES: FrameMessage[] = [
  frame(1, {
    a: [-80, 40, 35],
    b: [55, -25, 28],
    c: [5, 5, 12],
    d: [12, 9, 31],
  }),
  frame(2, {
    a: [-85, 42, 33],
    b: [58, -28, 29],
    c: [4, 6, 14],
    d: [11, 10, 30.5],
  }),
  frame(3, {
    a: [-90, 45, 30],
    b: [60, -30, 30],
    c: [3, 7, 15],
    d: [10, 10, 30],
  }),
];

/** Deterministic manual timer: callbacks run only when advance() is called. */
export class ManualTimer {
  private queue: (() => void)[] = [];

  timer: Timer = (callback) => {
    this.queue.push(callback);
    const mine = callback;
    return () => {
      this.queue = this.queue.filter((cb) => cb !== mine);
    };
  };

  advance(): void {
    const due = this.queue;
    this.queue = [];
    for (const callback of due) callback();
  }
}
