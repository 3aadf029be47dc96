/**
 * Session client: frame stream plus control channel.
 *
 * Controls are posted to the REST control endpoint; frames arrive over
 * the WebSocket. While disconnected the client queues outgoing controls
 * (never silently dropping them) and exposes a visible connection state
 * for the UI to render.
 */

import { ControlMessage, FrameMessage, parseFrame } from "./protocol.js";

export type ConnectionState = "connecting" | "open" | "reconnecting" | "closed";

/** The slice of WebSocket the client needs; injectable for tests. */
export interface SocketLike {
  onmessage: ((event: { data: string }) => void) | null;
  onclose: (() => void) | null;
  onopen: (() => void) | null;
  close(): void;
}

export interface Transport {
  openFrameSocket(sessionId: string, everyN: number): SocketLike;
  postControl(sessionId: string, message: ControlMessage): Promise<unknown>;
}

export class SessionClient {
  private socket: SocketLike | null = null;
  private connection: ConnectionState = "closed";
  private queued: ControlMessage[] = [];
  private frameHandlers: ((frame: FrameMessage) => void)[] = [];
  private stateHandlers: ((state: ConnectionState) => void)[] = [];

  constructor(
    private readonly transport: Transport,
    readonly sessionId: string,
    private readonly everyN: number = 1,
  ) {}

  get connectionState(): ConnectionState {
    return this.connection;
  }

  get queuedControls(): readonly ControlMessage[] {
    return this.queued;
  }

  onFrame(handler: (frame: FrameMessage) => void): void {
    this.frameHandlers.push(handler);
  }

  onConnectionState(handler: (state: ConnectionState) => void): void {
    this.stateHandlers.push(handler);
  }

  connect(): void {
    this.setState(this.connection === "closed" ? "connecting" : "reconnecting");
    this.socket = this.transport.openFrameSocket(this.sessionId, this.everyN);
    this.socket.onopen = () => {
      this.setState("open");
      this.flushQueue();
    };
    this.socket.onmessage = (event) => {
      const frame = parseFrame(event.data);
      for (const handler of this.frameHandlers) handler(frame);
    };
    this.socket.onclose = () => {
      this.socket = null;
      this.setState("reconnecting");
    };
  }

  close(): void {
    this.socket?.close();
    this.socket = null;
    this.setState("closed");
  }

  /** Send a control, or queue it while the session is unreachable. */
  sendControl(message: ControlMessage): void {
    if (this.connection === "open") {
      void this.transport.postControl(this.sessionId, message);
    } else {
      this.queued.push(message);
    }
  }

  private flushQueue(): void {
    const backlog = this.queued;
    this.queued = [];
    for (const message of backlog) {
      void this.transport.postControl(this.sessionId, message);
    }
  }

  private setState(state: ConnectionState): void {
    this.connection = state;
    for (const handler of this.stateHandlers) handler(state);
  }
}
