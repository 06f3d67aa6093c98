/** Payload shapes of the advisor service API. Rationals arrive as decimal strings. */

export interface SpecPayload {
  name: string;
  slot_count: number;
  multipliers: string[];
  labels: string[] | null;
  roll_range: [number, number];
  optimal_expected_score: string;
  precision: number;
}

export interface SlotPayload {
  slot: number;
  multiplier: string;
  value: number | null;
}

export interface MoveLogPayload {
  roll: number;
  recommended_slot: number;
  chosen_slot: number;
  expected_score: string;
  followed: boolean;
}

export interface StatePayload {
  id: string;
  finished: boolean;
  pending_roll: number | null;
  rolls_played: number;
  free_slots: number[];
  slots: SlotPayload[];
  running_score: string;
  move_log: MoveLogPayload[];
  precision: number;
}

export interface CreateSessionPayload {
  id: string;
  spec: SpecPayload;
  state: StatePayload;
}

export interface EvaluationPayload {
  slot: number;
  value: string;
  projected_final: string;
  gap_to_best: string;
}

export interface RecommendationPayload {
  roll: number;
  best_slot: number;
  expected_score: string;
  gap_to_runner_up: string | null;
  evaluations: EvaluationPayload[];
  precision: number;
}

export interface PlacementPayload {
  state: StatePayload;
  move: MoveLogPayload & { recommended_slot: number; chosen_slot: number };
}

export interface SummaryPayload {
  final_score: string;
  optimal_expected_score: string;
  omniscient_retrospective: string;
  overridden_moves: number;
  percentile: number;
  precision: number;
}
