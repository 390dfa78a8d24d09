export type Dimension = "Request" | "Response" | "Other";

export interface SchemaAct {
  name: string;
  dimension: Dimension;
  definition: string;
  subfunctions: string[];
}

export interface WireSegment {
  SegID: number;
  Segment: string;
  SDA: string;
}

export interface WireTurn {
  UID: string;
  Person: string;
  Utterance: string;
  Over_ALL_DA: string;
  isSegmented: boolean;
  segments: WireSegment[];
  revision: string;
  warnings?: Finding[];
}

export interface WireDialogue {
  DID: number;
  modality: string;
  source: string;
  turns: WireTurn[];
}

export interface DialogueSummary {
  did: number;
  modality: string;
  source: string;
  num_turns: number;
}

export interface Finding {
  severity: "Error" | "Warning";
  path: string;
  rule: string;
  message: string;
}

export interface ValidationPayload {
  findings: Finding[];
  num_errors: number;
  num_warnings: number;
}

export interface StatsPayload {
  num_dialogues: number;
  num_spoken: number;
  num_chat: number;
  num_turns: number;
  num_utterances: number;
  avg_words_per_turn: number;
  avg_words_per_turn_display: string;
  avg_words_per_utterance: number;
  avg_words_per_utterance_display: string;
  act_histogram: Record<string, number>;
}

export interface SegmentDraft {
  text: string;
  act: string;
}

export interface AnnotationUpdate {
  overall_act: string;
  is_segmented: boolean;
  segments: SegmentDraft[];
  revision: string;
}

export interface TranslitPayload {
  text: string;
  out_of_alphabet: boolean;
  unmapped: string[];
}

export type PutResult =
  | { ok: true; turn: WireTurn }
  | { ok: false; kind: "conflict"; currentRevision: string }
  | { ok: false; kind: "rejected"; findings: Finding[] }
  | { ok: false; kind: "error"; status: number; message: string };
