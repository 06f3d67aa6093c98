/** Browser bootstrap: wire the input box, keyboard shortcuts, and board clicks. */

import { AdvisorClient } from './api';
import { GameController } from './controller';
import { keyAction } from './keyboard';
import { DomView } from './view';

const BASE_URL =
  new URLSearchParams(window.location.search).get('api') ?? 'http://127.0.0.1:8000';

async function boot() {
  const input = document.getElementById('roll-input') as HTMLInputElement;
  const newGameButton = document.getElementById('new-game') as HTMLButtonElement;

  const client = new AdvisorClient(BASE_URL);
  const view = new DomView(document, (slot) => void controller.place(slot));
  const controller = new GameController(client, view);

  async function submitFromInput() {
    const accepted = await controller.enterRoll(input.value);
    if (accepted) {
      input.value = '';
    }
  }

  document.addEventListener('keydown', (event) => {
    if (event.target === input && event.key !== 'Enter' && event.key !== 'Escape') {
      return; // let the input handle plain typing
    }
    const action = keyAction(event.key, controller.board?.pendingRoll != null);
    switch (action.type) {
      case 'digit':
        input.value += action.digit;
        input.focus();
        break;
      case 'backspace':
        input.value = input.value.slice(0, -1);
        break;
      case 'submit':
        void submitFromInput();
        break;
      case 'accept':
        void controller.acceptRecommendation();
        break;
      case 'cancel':
        input.value = '';
        view.clearInputError();
        break;
      default:
        return;
    }
    event.preventDefault();
  });

  newGameButton.addEventListener('click', () => void controller.start());

  await controller.start();
  input.focus();
}

void boot();
