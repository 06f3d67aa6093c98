/** Client-side roll entry validation against the session's roll range. */

export type RollValidation =
  | { ok: true; roll: number }
  | { ok: false; message: string };

export function validateRollInput(raw: string, range: [number, number]): RollValidation {
  const trimmed = raw.trim();
  if (trimmed === '') {
    return { ok: false, message: 'Enter the roll you just threw' };
  }
  if (!/^-?\d+$/.test(trimmed)) {
    return { ok: false, message: `"${trimmed}" is not a whole number` };
  }
  const roll = Number(trimmed);
  const [min, max] = range;
  if (roll < min || roll > max) {
    return { ok: false, message: `Rolls are between ${min} and ${max}` };
  }
  return { ok: true, roll };
}
