import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    environment: "jsdom",
    include: ["tests/**/*.test.ts"],
    globalSetup: process.env.REQGRID_E2E ? ["tests/e2e.setup.ts"] : [],
    testTimeout: 20000,
  },
});
