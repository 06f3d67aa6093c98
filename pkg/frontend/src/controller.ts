/** Orchestrates the two-phase roll/commit loop against an abstract view.
 *
 * All expectations shown anywhere come from service payloads; the controller
 * only moves them around. On conflicts it resyncs the board from the server,
 * which is always authoritative.
 */

import { AdvisorClient, ApiError } from './api';
import {
  BoardViewModel,
  boardFromState,
  shortDecimal,
  withRecommendation,
} from './model';
import type { SpecPayload, SummaryPayload } from './types';
import { validateRollInput } from './validate';

export interface SummaryView {
  finalScore: string;
  optimalBenchmark: string; // e.g. "642.24"
  omniscientRetrospective: string;
  overriddenMoves: number;
  percentile: number;
}

export interface AdvisorView {
  renderBoard(board: BoardViewModel): void;
  renderSummary(summary: SummaryView): void;
  showInputError(message: string): void;
  clearInputError(): void;
  shakeSlot(slot: number): void;
}

export class GameController {
  spec: SpecPayload | null = null;
  board: BoardViewModel | null = null;
  summary: SummaryView | null = null;

  constructor(
    private api: AdvisorClient,
    private view: AdvisorView
  ) {}

  async start(specOverride?: unknown): Promise<void> {
    const created = await this.api.createSession(specOverride);
    this.spec = created.spec;
    this.board = boardFromState(created.spec, created.state);
    this.summary = null;
    this.view.renderBoard(this.board);
  }

  /** Validate locally first: bad entries never reach the network. */
  async enterRoll(raw: string): Promise<boolean> {
    if (!this.spec || !this.board || this.board.finished) {
      return false;
    }
    const checked = validateRollInput(raw, this.spec.roll_range);
    if (!checked.ok) {
      this.view.showInputError(checked.message);
      return false;
    }
    this.view.clearInputError();
    const recommendation = await this.api.submitRoll(this.board.sessionId, checked.roll);
    this.board = withRecommendation(this.board, recommendation);
    this.view.renderBoard(this.board);
    return true;
  }

  async place(slot: number): Promise<void> {
    if (!this.board || this.board.pendingRoll === null) {
      return;
    }
    const target = this.board.slots.find((entry) => entry.slot === slot);
    if (!target || target.value !== null) {
      this.view.shakeSlot(slot);
      return;
    }
    try {
      const placed = await this.api.commitPlacement(
        this.board.sessionId,
        this.board.pendingRoll,
        slot
      );
      this.board = boardFromState(this.spec!, placed.state);
      this.view.renderBoard(this.board);
      if (this.board.rollsRemaining === 0) {
        await this.finish();
      }
    } catch (err) {
      if (err instanceof ApiError && err.status === 409) {
        await this.resync();
        return;
      }
      throw err;
    }
  }

  async acceptRecommendation(): Promise<void> {
    if (this.board?.bestSlot != null) {
      await this.place(this.board.bestSlot);
    }
  }

  async resync(): Promise<void> {
    if (!this.spec || !this.board) {
      return;
    }
    const state = await this.api.getSession(this.board.sessionId);
    this.board = boardFromState(this.spec, state);
    this.view.renderBoard(this.board);
  }

  async finish(): Promise<SummaryView> {
    if (!this.board) {
      throw new Error('no active session');
    }
    const payload: SummaryPayload = await this.api.finishSession(this.board.sessionId);
    this.summary = {
      finalScore: shortDecimal(payload.final_score, 0),
      optimalBenchmark: shortDecimal(payload.optimal_expected_score, 2),
      omniscientRetrospective: shortDecimal(payload.omniscient_retrospective, 0),
      overriddenMoves: payload.overridden_moves,
      percentile: payload.percentile,
    };
    this.board = { ...this.board, finished: true };
    this.view.renderSummary(this.summary);
    return this.summary;
  }
}
