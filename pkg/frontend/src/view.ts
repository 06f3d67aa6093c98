/** DOM renderer for the board, move history, and end-of-game summary. */

import type { BoardViewModel } from './model';
import type { AdvisorView, SummaryView } from './controller';

export class DomView implements AdvisorView {
  private boardEl: HTMLElement;
  private historyEl: HTMLElement;
  private summaryEl: HTMLElement;
  private statusEl: HTMLElement;
  private errorEl: HTMLElement;

  constructor(
    root: Document,
    private onSlotClick: (slot: number) => void
  ) {
    this.boardEl = root.getElementById('board')!;
    this.historyEl = root.getElementById('history')!;
    this.summaryEl = root.getElementById('summary')!;
    this.statusEl = root.getElementById('status')!;
    this.errorEl = root.getElementById('input-error')!;
  }

  renderBoard(board: BoardViewModel): void {
    this.boardEl.replaceChildren();
    for (const slot of board.slots) {
      const cell = document.createElement('button');
      cell.className = 'slot';
      cell.dataset.slot = String(slot.slot);
      if (slot.value !== null) {
        cell.classList.add('filled');
      }
      if (slot.recommended) {
        cell.classList.add('recommended');
      }
      const title = document.createElement('div');
      title.className = 'slot-title';
      title.textContent = slot.label ?? `x${slot.multiplier}`;
      const body = document.createElement('div');
      body.className = 'slot-value';
      body.textContent = slot.value !== null ? String(slot.value) : '';
      cell.append(title, body);
      if (slot.value === null && slot.whatIf) {
        const note = document.createElement('div');
        note.className = 'slot-whatif';
        note.textContent = `${slot.whatIf.projectedFinal} (-${slot.whatIf.gapToBest})`;
        cell.append(note);
      }
      cell.addEventListener('click', () => this.onSlotClick(slot.slot));
      this.boardEl.append(cell);
    }

    const pending =
      board.pendingRoll !== null
        ? `pending roll ${board.pendingRoll} - click a slot or press Enter for slot ${board.bestSlot}`
        : board.finished
          ? 'game over'
          : `${board.rollsRemaining} roll(s) to play`;
    this.statusEl.textContent = `score ${board.runningScore} | ${pending}`;

    this.historyEl.replaceChildren();
    for (const move of board.moveLog) {
      const row = document.createElement('li');
      row.textContent = `roll ${move.roll} -> slot ${move.chosen_slot}`;
      if (!move.followed) {
        const marker = document.createElement('span');
        marker.className = 'override';
        marker.textContent = ` (override; advice was slot ${move.recommended_slot})`;
        row.append(marker);
      }
      this.historyEl.append(row);
    }
  }

  renderSummary(summary: SummaryView): void {
    this.summaryEl.replaceChildren();
    this.summaryEl.classList.add('visible');
    const rows: [string, string][] = [
      ['Final score', summary.finalScore],
      ['Optimal-play benchmark', summary.optimalBenchmark],
      ['All-knowing replay of your rolls', summary.omniscientRetrospective],
      ['Overridden recommendations', String(summary.overriddenMoves)],
    ];
    for (const [label, value] of rows) {
      const row = document.createElement('div');
      row.className = 'summary-row';
      row.textContent = `${label}: ${value}`;
      this.summaryEl.append(row);
    }
    const bar = document.createElement('div');
    bar.className = 'percentile-bar';
    const fill = document.createElement('div');
    fill.className = 'percentile-fill';
    fill.style.width = `${Math.max(0, Math.min(100, summary.percentile))}%`;
    fill.textContent = `${summary.percentile.toFixed(1)}th percentile`;
    bar.append(fill);
    this.summaryEl.append(bar);
  }

  showInputError(message: string): void {
    this.errorEl.textContent = message;
  }

  clearInputError(): void {
    this.errorEl.textContent = '';
  }

  shakeSlot(slot: number): void {
    const cell = this.boardEl.querySelector<HTMLElement>(`[data-slot="${slot}"]`);
    if (!cell) {
      return;
    }
    cell.classList.remove('shake');
    void cell.offsetWidth; // restart the animation
    cell.classList.add('shake');
  }
}
