import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    include: ["tests/**/*.test.ts"],
    // the integration suite boots the real session server
    testTimeout: 30_000,
    hookTimeout: 30_000,
  },
});
