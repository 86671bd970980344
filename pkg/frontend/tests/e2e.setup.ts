// Spawns the real Python service for the end-to-end test and tears it down.

import { spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

export const E2E_PORT = 8765;
export const E2E_BASE = `http://127.0.0.1:${E2E_PORT}`;

let server: ChildProcess;
let stateDir: string;

async function waitForService(deadlineMs: number): Promise<void> {
  const deadline = Date.now() + deadlineMs;
  while (Date.now() < deadline) {
    try {
      const res = await fetch(`${E2E_BASE}/catalog`);
      if (res.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((r) => setTimeout(r, 200));
  }
  throw new Error(`service did not come up on ${E2E_BASE}`);
}

export async function setup(): Promise<void> {
  stateDir = mkdtempSync(join(tmpdir(), "reqgrid-e2e-"));
  server = spawn(
    "python3",
    [
      "-m", "reqgrid.cli",
      "serve",
      "--store", join(stateDir, "store.json"),
      "--host", "127.0.0.1",
      "--port", String(E2E_PORT),
    ],
    { stdio: "inherit" },
  );
  await waitForService(15000);
}

export async function teardown(): Promise<void> {
  server?.kill("SIGTERM");
  await new Promise((r) => setTimeout(r, 300));
  rmSync(stateDir, { recursive: true, force: true });
}
