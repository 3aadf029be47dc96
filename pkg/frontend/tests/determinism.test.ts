import { describe, expect, it } from "vitest";

import { Explorer } from "../src/explorer.js";
import { ControlMessage, FrameMessage } from "../src/protocol.js";
import { UiEvent } from "../src/controls.js";
import { DOC, FRAMES, ManualTimer, frame } from "./fixtures.js";

/** A recorded session: interleaved frames and user inputs. */
type ScriptStep =
  | { frame: FrameMessage }
  | { input: UiEvent }
  | { settle: true };

const SCRIPT: ScriptStep[] = [
  { frame: FRAMES[0]! },
  { input: { kind: "slider-k", value: 2 } },
  { input: { kind: "slider-k", value: 8 } },
  { frame: FRAMES[1]! },
  { settle: true },
  { input: { kind: "toggle-knowwhere" } },
  { input: { kind: "click-node", nodeId: "a" } },
  { input: { kind: "filter-min-degree", value: 2 } },
  { frame: FRAMES[2]! },
  { input: { kind: "camera", azimuth: 120, elevation: 30 } },
  { input: { kind: "toggle-knowwhere" } },
  { settle: true },
];

function replay(script: ScriptStep[]) {
  const sent: ControlMessage[] = [];
  const timer = new ManualTimer();
  const explorer = new Explorer(DOC, (m) => sent.push(m), { timer: timer.timer });
  for (const step of script) {
    if ("frame" in step) explorer.ingest(step.frame);
    else if ("input" in step) explorer.handleInput(step.input);
    else {
      timer.advance();
      explorer.settleInputs();
    }
  }
  return { scene: explorer.scene(), sent };
}

describe("replay determinism", () => {
  it("the same frames and input script reproduce the same final scene", () => {
    const first = replay(SCRIPT);
    const second = replay(SCRIPT);
    expect(first.scene).not.toBeNull();
    expect(second.scene).toEqual(first.scene);
    expect(second.sent).toEqual(first.sent);
  });

  it("the final scene reflects every scripted input", () => {
    const { scene, sent } = replay(SCRIPT);
    // One settled K message and one settled filter message.
    expect(sent).toEqual([
      { type: "set_geo_weight", geo_weight: 8 },
      { type: "set_min_degree", min_degree: 2 },
    ]);
    // d (degree 1) filtered out; KnowWhere toggled twice -> links back on.
    expect(scene!.nodes.map((n) => n.id)).toEqual(["a", "b", "c"]);
    expect(scene!.geoLinks.map((l) => l.nodeId).sort()).toEqual(["a", "b"]);
    expect(scene!.profile?.nodeId).toBe("a");
    expect(scene!.camera.azimuth).toBe(120);
    expect(scene!.iteration).toBe(3);
  });

  it("an out-of-order stale frame never wins over a newer one", () => {
    const sent: ControlMessage[] = [];
    const explorer = new Explorer(DOC, (m) => sent.push(m));
    explorer.ingest(FRAMES[2]!);
    explorer.ingest(frame(1, { a: [0, 0, 0] }));
    expect(explorer.scene()!.iteration).toBe(3);
  });

  it("ui state never leaks into layout data", () => {
    const { scene } = replay(SCRIPT);
    const positionsInDoc = FRAMES[2]!.positions;
    for (const node of scene!.nodes) {
      expect(node.position).toEqual(positionsInDoc[node.id]);
    }
  });
});
