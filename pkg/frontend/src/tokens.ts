/**
 * Token-boundary arithmetic shared by the screen and its tests.
 *
 * A token is a maximal run of non-whitespace characters, the same
 * definition the validation service applies, so a split the screen
 * produces always re-concatenates to the turn text on the server side.
 */

export function tokenize(text: string): string[] {
  return text.split(/\s+/u).filter((token) => token.length > 0);
}

export function normalizeWs(text: string): string {
  return tokenize(text).join(" ");
}

/** Boundaries are token counts: boundary 2 splits after the 2nd token. */
export function validBoundaries(nTokens: number, boundaries: number[]): boolean {
  let previous = 0;
  for (const boundary of boundaries) {
    if (!Number.isInteger(boundary)) return false;
    if (boundary <= previous || boundary >= nTokens) return false;
    previous = boundary;
  }
  return true;
}

export function segmentTexts(text: string, boundaries: number[]): string[] {
  const tokens = tokenize(text);
  if (!validBoundaries(tokens.length, boundaries)) {
    throw new Error(`invalid boundaries ${boundaries} for ${tokens.length} tokens`);
  }
  const cuts = [0, ...boundaries, tokens.length];
  const parts: string[] = [];
  for (let i = 0; i + 1 < cuts.length; i++) {
    parts.push(tokens.slice(cuts[i], cuts[i + 1]).join(" "));
  }
  return parts;
}

/** Recover split points from segment texts (inverse of segmentTexts). */
export function boundariesFromSegments(segmentTextList: string[]): number[] {
  const boundaries: number[] = [];
  let total = 0;
  for (let i = 0; i + 1 < segmentTextList.length; i++) {
    total += tokenize(segmentTextList[i]).length;
    boundaries.push(total);
  }
  return boundaries;
}
