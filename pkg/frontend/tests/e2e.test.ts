import { spawn, spawnSync, type ChildProcess } from "node:child_process";
import { mkdtempSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { AnnotationApi } from "../src/api.js";
import { ScreenController } from "../src/state.js";
import { actionForKey, dispatch } from "../src/keyboard.js";

/**
 * End to end against the real service: import a transcript with the
 * CLI, serve it, reproduce the three-way opening annotation through the
 * screen controller (the layer the DOM delegates to), and check that the
 * corpus directory ends up validation-clean with the expected histogram.
 */

const PYTHON = process.env.PYTHON ?? "python3";
const PORT = 8900 + Math.floor(Math.random() * 800);
const BASE = `http://127.0.0.1:${PORT}`;

const TRANSCRIPT =
  "Operator\tمساء الخير بنك مصر احمد مع حضرتك\n" +
  "Customer\tعايز اعرف الرصيد\n" +
  "Operator\tشكرا لاتصالك مع السلامة\n";

let corpusDir: string;
let server: ChildProcess | null = null;

async function waitForService(): Promise<void> {
  for (let attempt = 0; attempt < 100; attempt++) {
    try {
      const response = await fetch(`${BASE}/schema`);
      if (response.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 200));
  }
  throw new Error("service did not come up");
}

beforeAll(async () => {
  const workDir = mkdtempSync(join(tmpdir(), "dialact-e2e-"));
  const transcriptPath = join(workDir, "call.txt");
  corpusDir = join(workDir, "corpus");
  writeFileSync(transcriptPath, TRANSCRIPT, "utf-8");

  const convert = spawnSync(
    PYTHON,
    [
      "-m",
      "dialact.cli",
      "convert",
      "--from",
      "txt",
      "--to",
      "json",
      "--modality",
      "spoken",
      "--source",
      "bank",
      transcriptPath,
      corpusDir,
    ],
    { encoding: "utf-8" },
  );
  expect(convert.status, convert.stderr).toBe(0);

  server = spawn(
    PYTHON,
    ["-m", "dialact.cli", "serve", "--corpus", corpusDir, "--port", String(PORT)],
    { stdio: "ignore" },
  );
  await waitForService();
}, 60_000);

afterAll(() => {
  server?.kill("SIGTERM");
});

describe("annotating the opening call through the screen", () => {
  it("reproduces the segmented opening and leaves a clean corpus", async () => {
    const api = new AnnotationApi(BASE);
    const controller = new ScreenController(api);
    await controller.init();

    // selectors offer exactly the 25 schema acts
    expect(controller.schema).toHaveLength(25);
    const before = await api.getStats();
    expect(before.act_histogram["UNANNOTATED"]).toBe(3);

    // screen shows the pending first turn
    expect(controller.uid).toBe("D01U01");
    expect(controller.person).toBe("Operator");
    expect(controller.utterance).toBe("مساء الخير بنك مصر احمد مع حضرتك");
    expect(controller.overallAct).toBe("UNANNOTATED");

    // annotate: Opening, split after tokens 2 and 4, tag the rows
    controller.setOverallAct("Opening");
    controller.toggleSegmented();
    controller.toggleBoundary(2);
    controller.toggleBoundary(4);
    controller.setSegmentAct(0, "Greeting");
    controller.setSegmentAct(1, "Self-Introduce");
    controller.setSegmentAct(2, "Self-Introduce");
    expect(controller.segmentRows.map((row) => row.text)).toEqual([
      "مساء الخير",
      "بنك مصر",
      "احمد مع حضرتك",
    ]);
    expect(await controller.save()).toBe(true);
    expect(controller.segIds).toEqual([1, 2, 3]);

    // a stale save from a second screen gets the conflict treatment
    const rival = new ScreenController(api);
    await rival.init();
    rival.setOverallAct("Inform");
    rival.revision = "0000000000000000";
    expect(await rival.save()).toBe(false);
    expect(rival.conflict).toBe(true);

    // a bad act is refused with findings rendered in the banner
    await controller.nextTurn();
    expect(controller.uid).toBe("D01U02");
    controller.setOverallAct("Bogus-Act");
    expect(await controller.save()).toBe(false);
    expect(controller.banner).not.toBeNull();
    expect(controller.banner![0].rule).toBe("R1");
    expect(controller.saveDisabled).toBe(true);

    // fix it via the keyboard-driven flow
    controller.setOverallAct("Service-Question");
    await dispatch(controller, actionForKey("Enter", false));
    expect(controller.saved).toBe(true);

    await controller.nextTurn();
    expect(controller.uid).toBe("D01U03");
    controller.setOverallAct("Closing");
    expect(await controller.save()).toBe(true);

    // the corpus is now validation-clean, with the expected histogram
    const report = await api.getValidation();
    expect(report.num_errors).toBe(0);
    expect(report.findings).toEqual([]);

    const after = await api.getStats();
    expect(after.num_turns).toBe(3);
    expect(after.num_utterances).toBe(5);
    expect(after.act_histogram).toEqual({
      Greeting: 1,
      "Self-Introduce": 2,
      "Service-Question": 1,
      Closing: 1,
    });

    // and the directory on disk agrees (CLI exit 0 means no errors)
    const verdict = spawnSync(
      PYTHON,
      ["-m", "dialact.cli", "validate", corpusDir],
      { encoding: "utf-8" },
    );
    expect(verdict.status, verdict.stdout + verdict.stderr).toBe(0);
    expect(verdict.stdout).toContain("0 error(s), 0 warning(s)");
  }, 60_000);
});
