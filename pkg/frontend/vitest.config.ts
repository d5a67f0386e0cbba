import { defineConfig } from "vitest/config";

// The page origin matches the spawned API server (see tests/globalSetup.ts)
// so the client exercises plain same-origin fetches.
export default defineConfig({
  test: {
    environment: "happy-dom",
    environmentOptions: { happyDOM: { url: "http://127.0.0.1:8976" } },
    globalSetup: ["tests/globalSetup.ts"],
    fileParallelism: false,
    testTimeout: 20_000,
    hookTimeout: 60_000,
  },
});
