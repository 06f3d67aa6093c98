/** Keyboard-first entry: map key presses to game actions.
 *
 * The player is handling physical dice, so the whole loop works without the
 * mouse: type the roll, Enter to submit, Enter again to accept the
 * recommendation, Escape to clear a mistyped entry.
 */

export type KeyAction =
  | { type: 'digit'; digit: string }
  | { type: 'backspace' }
  | { type: 'submit' }
  | { type: 'accept' }
  | { type: 'cancel' }
  | { type: 'none' };

export function keyAction(key: string, hasPendingRoll: boolean): KeyAction {
  if (/^[0-9]$/.test(key)) {
    return { type: 'digit', digit: key };
  }
  switch (key) {
    case 'Backspace':
      return { type: 'backspace' };
    case 'Enter':
      return hasPendingRoll ? { type: 'accept' } : { type: 'submit' };
    case 'Escape':
      return { type: 'cancel' };
    default:
      return { type: 'none' };
  }
}
