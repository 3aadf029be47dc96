export * from "./protocol.js";
export * from "./viewState.js";
export * from "./scene.js";
export * from "./controls.js";
export * from "./client.js";
export * from "./explorer.js";
