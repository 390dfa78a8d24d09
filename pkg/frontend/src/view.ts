import type { ScreenController } from "./state.js";
import type { AnnotationApi } from "./api.js";

/**
 * DOM renderer. Everything interesting lives in the controller; this
 * file only projects its state into elements and routes events back.
 * Utterance and segment cells render right-to-left.
 */

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  ...children: (Node | string)[]
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  node.append(...children);
  return node;
}

function actSelect(
  controller: ScreenController,
  current: string,
  onPick: (name: string) => void,
): HTMLSelectElement {
  const select = el("select") as HTMLSelectElement;
  if (!controller.schema.some((act) => act.name === current)) {
    // pending placeholder or legacy value: shown but never offered
    select.append(el("option", { value: current }, current || "(unset)"));
  }
  for (const [dimension, acts] of controller.actsByDimension()) {
    const group = el("optgroup", { label: dimension });
    for (const act of acts) {
      const option = el("option", { value: act.name, title: act.definition }, act.name);
      group.append(option);
    }
    select.append(group);
  }
  select.value = current;
  select.addEventListener("change", () => onPick(select.value));
  return select;
}

function utteranceView(controller: ScreenController): HTMLElement {
  const container = el("div", { class: "utterance", dir: "rtl" });
  const tokens = controller.tokens;
  tokens.forEach((token, index) => {
    container.append(el("span", { class: "token" }, token));
    const boundary = index + 1;
    if (boundary < tokens.length && controller.isSegmented) {
      const active = controller.boundaries.includes(boundary);
      const gap = el(
        "button",
        {
          class: active ? "gap active" : "gap",
          title: active ? "merge here" : "split here",
        },
        active ? "|" : "+",
      );
      gap.addEventListener("click", () => controller.toggleBoundary(boundary));
      container.append(gap);
    } else if (boundary < tokens.length) {
      container.append(" ");
    }
  });
  return container;
}

function segmentTable(
  controller: ScreenController,
  api: AnnotationApi | null,
): HTMLElement {
  const table = el("table", { class: "segments" });
  table.append(
    el(
      "tr",
      {},
      el("th", {}, "SegID"),
      el("th", {}, "Segment"),
      el("th", {}, "SDA"),
    ),
  );
  controller.segmentRows.forEach((row, index) => {
    const text = el("td", { dir: "rtl", class: "segment-text" }, row.text);
    if (api) {
      const caption = el("div", { class: "bw" });
      void api.translit(row.text).then((payload) => {
        caption.textContent = payload.text;
      });
      text.append(caption);
    }
    const tr = el(
      "tr",
      { class: controller.focusSegment === index ? "focused" : "" },
      el("td", {}, row.segId === null ? "new" : String(row.segId)),
      text,
      el(
        "td",
        {},
        actSelect(controller, row.act, (name) =>
          controller.setSegmentAct(index, name),
        ),
      ),
    );
    tr.addEventListener("click", () => controller.focusSegmentRow(index));
    table.append(tr);
  });
  return table;
}

function banner(controller: ScreenController): HTMLElement | null {
  if (controller.conflict) {
    const reload = el("button", {}, "reload turn");
    reload.addEventListener("click", () => void controller.reloadTurn());
    return el(
      "div",
      { class: "banner conflict" },
      "Someone else saved this turn first. ",
      reload,
    );
  }
  if (controller.networkError) {
    const retry = el("button", {}, "retry save");
    retry.addEventListener("click", () => void controller.save());
    return el(
      "div",
      { class: "banner network" },
      `Network problem: ${controller.networkError} `,
      retry,
    );
  }
  if (controller.banner) {
    const box = el("div", { class: "banner findings" });
    for (const finding of controller.banner) {
      box.append(
        el(
          "div",
          {},
          `[${finding.severity}] ${finding.rule} ${finding.path}: ${finding.message}`,
        ),
      );
    }
    return box;
  }
  return null;
}

export function render(
  root: HTMLElement,
  controller: ScreenController,
  api: AnnotationApi | null,
): void {
  root.replaceChildren();

  const dialoguePicker = el("select") as HTMLSelectElement;
  for (const dialogue of controller.dialogues) {
    dialoguePicker.append(
      el(
        "option",
        { value: String(dialogue.did) },
        `D${dialogue.did} (${dialogue.modality}, ${dialogue.source},` +
          ` ${dialogue.num_turns} turns)`,
      ),
    );
  }
  if (controller.did !== null) dialoguePicker.value = String(controller.did);
  dialoguePicker.addEventListener("change", () =>
    void controller.openDialogue(Number(dialoguePicker.value)),
  );

  const prev = el("button", {}, "◀ prev");
  prev.addEventListener("click", () => void controller.prevTurn());
  const next = el("button", {}, "next ▶");
  next.addEventListener("click", () => void controller.nextTurn());

  root.append(
    el(
      "div",
      { class: "toolbar" },
      dialoguePicker,
      prev,
      el(
        "span",
        { class: "position" },
        ` turn ${controller.turnIndex + 1} / ${controller.turnUids.length} `,
      ),
      next,
    ),
  );

  const fields = el("div", { class: "fields" });
  fields.append(
    el("div", {}, el("label", {}, "UID "), el("b", {}, controller.uid ?? "")),
    el("div", {}, el("label", {}, "DID "), el("b", {}, String(controller.did ?? ""))),
    el("div", {}, el("label", {}, "Person "), el("b", {}, controller.person)),
  );
  root.append(fields);

  root.append(el("h3", {}, "Utterance"), utteranceView(controller));

  const overall = el("div", { class: "overall" });
  overall.append(
    el("label", {}, "Over_ALL_DA "),
    actSelect(controller, controller.overallAct, (name) =>
      controller.setOverallAct(name),
    ),
  );
  const segToggle = el("input", { type: "checkbox" }) as HTMLInputElement;
  segToggle.checked = controller.isSegmented;
  segToggle.addEventListener("change", () => controller.toggleSegmented());
  overall.append(el("label", { class: "seg-toggle" }, segToggle, " isSegmented"));
  root.append(overall);

  if (controller.isSegmented) {
    root.append(segmentTable(controller, api));
  }

  const problem = banner(controller);
  if (problem) root.append(problem);

  const save = el("button", { class: "save" }, "Save") as HTMLButtonElement;
  save.disabled = controller.saveDisabled;
  save.addEventListener("click", () => void controller.save());
  const status = controller.saved
    ? "saved"
    : controller.dirty
      ? "unsaved changes"
      : "";
  root.append(
    el("div", { class: "actions" }, save, el("span", { class: "status" }, ` ${status}`)),
  );
}
