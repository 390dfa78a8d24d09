import type {
  AnnotationUpdate,
  DialogueSummary,
  PutResult,
  SchemaAct,
  StatsPayload,
  TranslitPayload,
  ValidationPayload,
  WireDialogue,
  WireTurn,
} from "./types.js";

/** What the screen controller needs from the annotation service. */
export interface ApiPort {
  getSchema(): Promise<SchemaAct[]>;
  listDialogues(): Promise<DialogueSummary[]>;
  getDialogue(did: number): Promise<WireDialogue>;
  getTurn(did: number, uid: string): Promise<WireTurn>;
  putTurn(did: number, uid: string, update: AnnotationUpdate): Promise<PutResult>;
  getStats(): Promise<StatsPayload>;
  getValidation(): Promise<ValidationPayload>;
  translit(text: string): Promise<TranslitPayload>;
}

export class AnnotationApi implements ApiPort {
  readonly baseUrl: string;

  constructor(baseUrl: string) {
    this.baseUrl = baseUrl.replace(/\/+$/, "");
  }

  private async getJson<T>(path: string): Promise<T> {
    const response = await fetch(this.baseUrl + path);
    if (!response.ok) {
      throw new Error(`GET ${path} failed: ${response.status}`);
    }
    return (await response.json()) as T;
  }

  getSchema(): Promise<SchemaAct[]> {
    return this.getJson("/schema");
  }

  listDialogues(): Promise<DialogueSummary[]> {
    return this.getJson("/dialogues");
  }

  getDialogue(did: number): Promise<WireDialogue> {
    return this.getJson(`/dialogues/${did}`);
  }

  getTurn(did: number, uid: string): Promise<WireTurn> {
    return this.getJson(`/dialogues/${did}/turns/${encodeURIComponent(uid)}`);
  }

  async putTurn(
    did: number,
    uid: string,
    update: AnnotationUpdate,
  ): Promise<PutResult> {
    const response = await fetch(
      `${this.baseUrl}/dialogues/${did}/turns/${encodeURIComponent(uid)}`,
      {
        method: "PUT",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(update),
      },
    );
    if (response.ok) {
      return { ok: true, turn: (await response.json()) as WireTurn };
    }
    if (response.status === 409) {
      const body = await response.json();
      return {
        ok: false,
        kind: "conflict",
        currentRevision: body.current_revision,
      };
    }
    if (response.status === 422) {
      const body = await response.json();
      return { ok: false, kind: "rejected", findings: body.findings ?? [] };
    }
    return {
      ok: false,
      kind: "error",
      status: response.status,
      message: await response.text(),
    };
  }

  getStats(): Promise<StatsPayload> {
    return this.getJson("/stats");
  }

  getValidation(): Promise<ValidationPayload> {
    return this.getJson("/validate");
  }

  translit(text: string): Promise<TranslitPayload> {
    const params = new URLSearchParams({ text, direction: "to-bw" });
    return this.getJson(`/translit?${params}`);
  }
}
