import type { ScreenController } from "./state.js";

/**
 * Keyboard-first annotation flow: arrows move between turns, digits
 * apply the quick acts (to the focused segment row, else the turn),
 * Enter saves, Escape reloads after a conflict.
 */
export type KeyAction =
  | { kind: "next-turn" }
  | { kind: "prev-turn" }
  | { kind: "save" }
  | { kind: "reload" }
  | { kind: "toggle-segmented" }
  | { kind: "quick-act"; slot: number }
  | { kind: "none" };

export function actionForKey(key: string, inTextInput: boolean): KeyAction {
  if (inTextInput) return { kind: "none" };
  if (key >= "1" && key <= "9") {
    return { kind: "quick-act", slot: Number(key) };
  }
  switch (key) {
    case "ArrowDown":
    case "j":
      return { kind: "next-turn" };
    case "ArrowUp":
    case "k":
      return { kind: "prev-turn" };
    case "Enter":
      return { kind: "save" };
    case "Escape":
      return { kind: "reload" };
    case "x":
      return { kind: "toggle-segmented" };
    default:
      return { kind: "none" };
  }
}

export async function dispatch(
  controller: ScreenController,
  action: KeyAction,
): Promise<void> {
  switch (action.kind) {
    case "next-turn":
      await controller.nextTurn();
      break;
    case "prev-turn":
      await controller.prevTurn();
      break;
    case "save":
      await controller.save();
      break;
    case "reload":
      await controller.reloadTurn();
      break;
    case "toggle-segmented":
      controller.toggleSegmented();
      break;
    case "quick-act":
      controller.applyQuickAct(action.slot);
      break;
    case "none":
      break;
  }
}

export function bindKeyboard(
  target: { addEventListener(type: string, cb: (e: KeyboardEvent) => void): void },
  controller: ScreenController,
): void {
  target.addEventListener("keydown", (event: KeyboardEvent) => {
    const element = event.target as HTMLElement | null;
    const inTextInput =
      element !== null &&
      (element.tagName === "INPUT" || element.tagName === "TEXTAREA");
    const action = actionForKey(event.key, inTextInput);
    if (action.kind !== "none") {
      event.preventDefault();
      void dispatch(controller, action);
    }
  });
}
