import type { ApiPort } from "./api.js";
import type {
  AnnotationUpdate,
  DialogueSummary,
  Finding,
  SchemaAct,
  SegmentDraft,
  WireTurn,
} from "./types.js";
import { boundariesFromSegments, segmentTexts, tokenize } from "./tokens.js";

/**
 * Screen controller for one annotation view: navigate turns, pick the
 * overall act, toggle segmentation, split at token boundaries, assign
 * per-segment acts, save with optimistic concurrency.
 *
 * The DOM layer is a thin renderer over this class, which keeps every
 * behavior drivable headlessly (tests run the controller against the
 * real HTTP service).
 */

export interface SegmentRow {
  segId: number | null;
  text: string;
  act: string;
}

/** Acts offered on the digit keys, filtered against the loaded schema. */
export const QUICK_ACT_PREFERENCE = [
  "Inform",
  "Service-Question",
  "Service-Answer",
  "Agree",
  "Disagree",
  "Greeting",
  "Thanking",
  "Opening",
  "Closing",
];

export class ScreenController {
  readonly api: ApiPort;

  schema: SchemaAct[] = [];
  dialogues: DialogueSummary[] = [];

  did: number | null = null;
  turnUids: string[] = [];
  turnIndex = 0;

  uid: string | null = null;
  person = "";
  utterance = "";
  overallAct = "";
  isSegmented = false;
  boundaries: number[] = [];
  segmentActs: string[] = [];
  segIds: (number | null)[] = [];
  revision = "";

  dirty = false;
  saved = false;
  banner: Finding[] | null = null;
  conflict = false;
  networkError: string | null = null;
  focusSegment: number | null = null;

  private listeners: (() => void)[] = [];

  constructor(api: ApiPort) {
    this.api = api;
  }

  onChange(listener: () => void): void {
    this.listeners.push(listener);
  }

  private notify(): void {
    for (const listener of this.listeners) listener();
  }

  // -- loading ---------------------------------------------------------

  async init(): Promise<void> {
    this.schema = await this.api.getSchema();
    this.dialogues = await this.api.listDialogues();
    if (this.dialogues.length > 0) {
      await this.openDialogue(this.dialogues[0].did);
    } else {
      this.notify();
    }
  }

  async openDialogue(did: number): Promise<void> {
    const dialogue = await this.api.getDialogue(did);
    this.did = dialogue.DID;
    this.turnUids = dialogue.turns.map((turn) => turn.UID);
    this.turnIndex = 0;
    if (dialogue.turns.length > 0) {
      this.loadTurn(dialogue.turns[0]);
    }
    this.notify();
  }

  async gotoTurn(index: number): Promise<void> {
    if (this.did === null) return;
    if (index < 0 || index >= this.turnUids.length) return;
    const turn = await this.api.getTurn(this.did, this.turnUids[index]);
    this.turnIndex = index;
    this.loadTurn(turn);
    this.notify();
  }

  nextTurn(): Promise<void> {
    return this.gotoTurn(this.turnIndex + 1);
  }

  prevTurn(): Promise<void> {
    return this.gotoTurn(this.turnIndex - 1);
  }

  async reloadTurn(): Promise<void> {
    if (this.did === null || this.uid === null) return;
    const turn = await this.api.getTurn(this.did, this.uid);
    this.loadTurn(turn);
    this.notify();
  }

  loadTurn(turn: WireTurn): void {
    this.uid = turn.UID;
    this.person = turn.Person;
    this.utterance = turn.Utterance;
    this.overallAct = turn.Over_ALL_DA;
    this.isSegmented = turn.isSegmented;
    this.boundaries = boundariesFromSegments(
      turn.segments.map((segment) => segment.Segment),
    );
    this.segmentActs = turn.segments.map((segment) => segment.SDA);
    this.segIds = turn.segments.map((segment) => segment.SegID);
    this.revision = turn.revision;
    this.dirty = false;
    this.saved = false;
    this.banner = null;
    this.conflict = false;
    this.networkError = null;
    this.focusSegment = null;
  }

  // -- derived state ---------------------------------------------------

  get tokens(): string[] {
    return tokenize(this.utterance);
  }

  get segmentRows(): SegmentRow[] {
    if (!this.isSegmented) return [];
    const texts = segmentTexts(this.utterance, this.boundaries);
    return texts.map((text, i) => ({
      segId: this.segIds[i] ?? null,
      text,
      act: this.segmentActs[i] ?? "",
    }));
  }

  get saveDisabled(): boolean {
    return this.banner !== null || !this.dirty;
  }

  actsByDimension(): Map<string, SchemaAct[]> {
    const groups = new Map<string, SchemaAct[]>();
    for (const act of this.schema) {
      const list = groups.get(act.dimension) ?? [];
      list.push(act);
      groups.set(act.dimension, list);
    }
    return groups;
  }

  quickActs(): string[] {
    const known = new Set(this.schema.map((act) => act.name));
    return QUICK_ACT_PREFERENCE.filter((name) => known.has(name)).slice(0, 9);
  }

  // -- edits -----------------------------------------------------------

  private touched(): void {
    this.dirty = true;
    this.saved = false;
    this.banner = null;
    this.notify();
  }

  setOverallAct(name: string): void {
    this.overallAct = name;
    this.touched();
  }

  toggleSegmented(): void {
    this.isSegmented = !this.isSegmented;
    if (this.isSegmented && this.segmentActs.length === 0) {
      this.boundaries = [];
      this.segmentActs = [this.overallAct];
      this.segIds = [null];
    }
    this.touched();
  }

  /** Add or remove a split after token `boundary` (1..nTokens-1). */
  toggleBoundary(boundary: number): void {
    if (!this.isSegmented) return;
    if (boundary < 1 || boundary >= this.tokens.length) return;
    const at = this.boundaries.indexOf(boundary);
    if (at >= 0) {
      this.boundaries.splice(at, 1);
      // merge the two rows around the removed split, keep the left act
      this.segmentActs.splice(at + 1, 1);
      this.segIds.splice(at + 1, 1);
    } else {
      let insert = 0;
      while (
        insert < this.boundaries.length &&
        this.boundaries[insert] < boundary
      ) {
        insert++;
      }
      this.boundaries.splice(insert, 0, boundary);
      // the split row inherits the act of the row it divides
      this.segmentActs.splice(insert + 1, 0, this.segmentActs[insert]);
      this.segIds.splice(insert + 1, 0, null);
    }
    this.touched();
  }

  setSegmentAct(index: number, name: string): void {
    if (index < 0 || index >= this.segmentActs.length) return;
    this.segmentActs[index] = name;
    this.touched();
  }

  focusSegmentRow(index: number | null): void {
    this.focusSegment = index;
    this.notify();
  }

  /** Digit keys: act n of the quick list onto the focused row or the turn. */
  applyQuickAct(slot: number): void {
    const acts = this.quickActs();
    if (slot < 1 || slot > acts.length) return;
    const name = acts[slot - 1];
    if (this.focusSegment !== null && this.isSegmented) {
      this.setSegmentAct(this.focusSegment, name);
    } else {
      this.setOverallAct(name);
    }
  }

  // -- saving ----------------------------------------------------------

  buildUpdate(): AnnotationUpdate {
    const segments: SegmentDraft[] = this.isSegmented
      ? segmentTexts(this.utterance, this.boundaries).map((text, i) => ({
          text,
          act: this.segmentActs[i],
        }))
      : [];
    return {
      overall_act: this.overallAct,
      is_segmented: this.isSegmented,
      segments,
      revision: this.revision,
    };
  }

  async save(): Promise<boolean> {
    if (this.saveDisabled) return false;
    if (this.did === null || this.uid === null) return false;
    let result;
    try {
      result = await this.api.putTurn(this.did, this.uid, this.buildUpdate());
    } catch (error) {
      // network failure: keep the unsaved state, surface a retry banner
      this.networkError = String(error);
      this.notify();
      return false;
    }
    this.networkError = null;
    if (result.ok) {
      this.loadTurn(result.turn);
      this.saved = true;
      this.notify();
      return true;
    }
    if (result.kind === "conflict") {
      this.conflict = true;
      this.notify();
      return false;
    }
    if (result.kind === "rejected") {
      this.banner = result.findings;
      this.notify();
      return false;
    }
    this.networkError = `save failed with status ${result.status}`;
    this.notify();
    return false;
  }
}
