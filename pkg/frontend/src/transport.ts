// WebSocket line to the session server, with automatic reconnection.
// The server speaks one JSON object per text frame; unparseable frames
// are logged and dropped so a confused server cannot wedge the UI.
import { parseServerLine } from "./protocol.js";
import type { ClientMessage, ServerMessage } from "./protocol.js";

export type ConnectionStatus = "open" | "closed";

export interface TransportOptions {
  host: string;
  port: number;
  onMessage: (msg: ServerMessage) => void;
  onStatus?: (status: ConnectionStatus) => void;
}

export interface Transport {
  /** True if the message went out; false while disconnected. */
  send(msg: ClientMessage): boolean;
  close(): void;
}

const RETRY_DELAYS = [300, 700, 1500, 3000, 5000];

export function connect(options: TransportOptions): Transport {
  let socket: WebSocket | null = null;
  let closedByUs = false;
  let attempt = 0;

  function open() {
    socket = new WebSocket(`ws://${options.host}:${options.port}`);
    socket.onopen = () => {
      attempt = 0;
      options.onStatus?.("open");
    };
    socket.onmessage = (event: MessageEvent) => {
      if (typeof event.data !== "string") return;
      const msg = parseServerLine(event.data);
      if (msg === null) {
        console.error("dropped unparseable server message:", event.data);
        return;
      }
      options.onMessage(msg);
    };
    socket.onclose = () => {
      options.onStatus?.("closed");
      if (closedByUs) return;
      const wait = RETRY_DELAYS[Math.min(attempt, RETRY_DELAYS.length - 1)];
      attempt += 1;
      setTimeout(open, wait);
    };
  }

  open();
  return {
    send(msg) {
      if (socket === null || socket.readyState !== WebSocket.OPEN) {
        return false;
      }
      socket.send(JSON.stringify(msg));
      return true;
    },
    close() {
      closedByUs = true;
      socket?.close();
    },
  };
}
