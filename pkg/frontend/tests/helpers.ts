import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import type { FetchLike } from "../src/api.js";

const here = dirname(fileURLToPath(import.meta.url));

// Fixture bodies are the raw bytes recorded from a live server by
// scripts/record-fixtures.sh; tests must not reformat them.
export function fixture(name: string): string {
  return readFileSync(join(here, "fixtures", name), "utf8");
}

export interface CannedResponse {
  status: number;
  body: string;
}

// A fetch whose routing the test controls. The handler sees the path and
// the parsed request body and returns one canned response.
export function fakeFetch(
  handler: (path: string, body: unknown) => CannedResponse,
): FetchLike {
  return async (input, init) => {
    const body = typeof init?.body === "string" ? JSON.parse(init.body) : null;
    const canned = handler(input, body);
    return new Response(canned.body, {
      status: canned.status,
      headers: { "content-type": "application/json" },
    });
  };
}
