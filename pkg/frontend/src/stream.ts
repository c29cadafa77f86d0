// Live event feed. The constructor is injectable so tests can script
// deliveries without a network.

import type { HelloEvent, TickEvent } from "./types.js";

export interface EventStream {
  addEventListener(type: string, listener: (ev: MessageEvent) => void): void;
  close(): void;
  onopen: ((ev: Event) => unknown) | null;
  onerror: ((ev: Event) => unknown) | null;
}

export type StreamCtor = new (url: string) => EventStream;

export interface StreamHandlers {
  onHello?: (hello: HelloEvent) => void;
  onTick?: (tick: TickEvent) => void;
  onState?: (live: boolean) => void;
}

export function connectStream(
  base: string,
  handlers: StreamHandlers,
  Ctor?: StreamCtor,
): () => void {
  const ctor = Ctor ?? (globalThis.EventSource as unknown as StreamCtor);
  const es = new ctor(`${base}/api/v1/stream`);
  es.addEventListener("hello", (ev) => {
    handlers.onState?.(true);
    handlers.onHello?.(JSON.parse(ev.data) as HelloEvent);
  });
  es.addEventListener("tick", (ev) => {
    handlers.onTick?.(JSON.parse(ev.data) as TickEvent);
  });
  es.onerror = () => handlers.onState?.(false);
  return () => es.close();
}
