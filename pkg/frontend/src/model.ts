/** Board view model: a pure projection of service payloads, never computed locally. */

import type {
  MoveLogPayload,
  RecommendationPayload,
  SpecPayload,
  StatePayload,
} from './types';

export interface WhatIf {
  value: string;
  projectedFinal: string;
  gapToBest: string;
}

export interface SlotView {
  slot: number;
  multiplier: string;
  label: string | null;
  value: number | null;
  recommended: boolean;
  whatIf: WhatIf | null;
}

export interface BoardViewModel {
  sessionId: string;
  slots: SlotView[];
  runningScore: string;
  rollsRemaining: number;
  pendingRoll: number | null;
  bestSlot: number | null;
  moveLog: MoveLogPayload[];
  finished: boolean;
}

export function boardFromState(spec: SpecPayload, state: StatePayload): BoardViewModel {
  return {
    sessionId: state.id,
    slots: state.slots.map((entry, index) => ({
      slot: entry.slot,
      multiplier: entry.multiplier,
      label: spec.labels ? spec.labels[index] : null,
      value: entry.value,
      recommended: false,
      whatIf: null,
    })),
    runningScore: state.running_score,
    rollsRemaining: spec.slot_count - state.rolls_played,
    pendingRoll: null,
    bestSlot: null,
    moveLog: state.move_log,
    finished: state.finished,
  };
}

/** Annotate the board with a pending roll's recommendation and what-ifs. */
export function withRecommendation(
  board: BoardViewModel,
  recommendation: RecommendationPayload
): BoardViewModel {
  const bySlot = new Map(recommendation.evaluations.map((e) => [e.slot, e]));
  return {
    ...board,
    pendingRoll: recommendation.roll,
    bestSlot: recommendation.best_slot,
    slots: board.slots.map((slot) => {
      const evaluation = bySlot.get(slot.slot);
      return {
        ...slot,
        recommended: slot.slot === recommendation.best_slot,
        whatIf: evaluation
          ? {
              value: evaluation.value,
              projectedFinal: evaluation.projected_final,
              gapToBest: evaluation.gap_to_best,
            }
          : null,
      };
    }),
  };
}

export function recommendedCount(board: BoardViewModel): number {
  return board.slots.filter((slot) => slot.recommended).length;
}

/** Trim a service decimal string for display, e.g. "642.23935" -> "642.24". */
export function shortDecimal(value: string, places = 2): string {
  const number = Number(value);
  return Number.isFinite(number) ? number.toFixed(places) : value;
}
