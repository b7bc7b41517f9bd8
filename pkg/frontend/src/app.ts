/**
 * DOM wiring: reads the wizard state from the URL, binds the controls,
 * re-queries on every change (no page reload) and keeps the URL shareable.
 * All rendering goes through the pure builders in render.ts.
 */

import { ApiClient, QuerySequencer, ServiceError } from './api.js';
import {
    DEFAULT_STATE,
    parseChip,
    parseState,
    serializeState,
    thresholdDelta,
    WizardState,
} from './state.js';
import {
    buildNameIndex,
    fieldForErrorCode,
    NameIndex,
    renderApplicationStep,
    renderChips,
    renderResultsGrid,
    renderSizeStep,
    renderStepper,
    renderUncertaintyPanel,
    renderUnreachableBanner,
} from './render.js';
import type { ResultDocument } from './types.js';

export class WizardApp {
    private state: WizardState;
    private index: NameIndex = new Map();
    private applications: string[] = ['any'];
    private sequencer = new QuerySequencer();
    private lastQuery: { state: WizardState; count: number } | null = null;

    constructor(
        private readonly root: HTMLElement,
        private readonly api: ApiClient,
        initialQueryString: string = window.location.search,
    ) {
        this.state = parseState(initialQueryString);
    }

    async start(): Promise<void> {
        try {
            const [applications, products] = await Promise.all([this.api.applications(), this.api.products()]);
            this.applications = applications;
            this.index = buildNameIndex(products);
        } catch (err) {
            this.showUnreachable(err);
            return;
        }
        this.renderShell();
        await this.runQuery();
    }

    private showUnreachable(err: unknown): void {
        const detail = err instanceof Error ? err.message : String(err);
        this.root.innerHTML = renderUnreachableBanner(detail);
        this.root.querySelector('#retry')?.addEventListener('click', () => void this.start());
    }

    private renderShell(): void {
        this.root.innerHTML = `
${renderStepper(3)}
<form id="wizard-form">
${renderApplicationStep(this.applications, this.state)}
${renderSizeStep(this.state)}
<div id="chips">${renderChips(this.state.chips)}</div>
<p><input type="text" id="chip-input" placeholder="type:attribute=value">
<button type="button" id="chip-add">Add requirement</button></p>
</form>
<div id="results" aria-live="polite"></div>
<div id="uncertainty"></div>`;
        const form = this.root.querySelector('#wizard-form') as HTMLFormElement;
        form.addEventListener('change', () => void this.onControlsChanged());
        (this.root.querySelector('#chip-add') as HTMLButtonElement).addEventListener('click', () => {
            const input = this.root.querySelector('#chip-input') as HTMLInputElement;
            const chip = parseChip(input.value.trim());
            if (!chip) {
                input.setCustomValidity('expected type:attribute=value');
                input.reportValidity();
                return;
            }
            input.setCustomValidity('');
            input.value = '';
            this.state = { ...this.state, chips: [...this.state.chips, chip] };
            this.refreshChips();
            void this.runQuery();
        });
        this.root.querySelector('#chips')?.addEventListener('click', (ev) => {
            const target = ev.target as HTMLElement;
            if (!target.classList.contains('chip-remove')) return;
            const idx = Number(target.dataset.chip);
            this.state = { ...this.state, chips: this.state.chips.filter((_, i) => i !== idx) };
            this.refreshChips();
            void this.runQuery();
        });
        window.addEventListener('popstate', () => {
            this.state = parseState(window.location.search);
            this.renderShell();
            void this.runQuery();
        });
    }

    private refreshChips(): void {
        const box = this.root.querySelector('#chips');
        if (box) box.innerHTML = renderChips(this.state.chips);
    }

    private readControls(): WizardState {
        const form = this.root.querySelector('#wizard-form') as HTMLFormElement;
        const data = new FormData(form);
        const application = String(data.get('application') ?? DEFAULT_STATE.application);
        const sizeK = data.get('size') === '5' ? 5 : 4;
        const rawLevel = String(data.get('min_justification') ?? '');
        return {
            application,
            sizeK,
            minJustification: rawLevel === '' ? null : (rawLevel as WizardState['minJustification']),
            chips: this.state.chips,
        };
    }

    private async onControlsChanged(): Promise<void> {
        this.state = this.readControls();
        await this.runQuery();
    }

    private clearFieldErrors(): void {
        for (const el of this.root.querySelectorAll('.field-error')) {
            (el as HTMLElement).hidden = true;
            el.textContent = '';
        }
    }

    private showFieldError(code: string, message: string): void {
        const field = fieldForErrorCode(code);
        const el = field ? this.root.querySelector(`#error-${field}`) : null;
        if (el) {
            el.textContent = message;
            (el as HTMLElement).hidden = false;
        } else {
            const results = this.root.querySelector('#results');
            if (results) results.innerHTML = `<p class="banner error">${message}</p>`;
        }
    }

    async runQuery(): Promise<void> {
        this.clearFieldErrors();
        const queryState = this.state;
        const url = `${window.location.pathname}?${serializeState(queryState)}`;
        window.history.replaceState(null, '', url);
        let outcome: { doc: ResultDocument; uncertain: Awaited<ReturnType<ApiClient['uncertain']>> } | null;
        try {
            outcome = await this.sequencer.run(async () => {
                const doc = await this.api.configure(queryState);
                const uncertain = await this.api.uncertain(queryState.minJustification);
                return { doc, uncertain };
            });
        } catch (err) {
            if (err instanceof ServiceError) {
                this.showFieldError(err.errorCode, err.message);
            } else {
                this.showUnreachable(err);
            }
            return;
        }
        if (outcome === null) return; // superseded by a newer query
        const { doc, uncertain } = outcome;
        const delta = this.lastQuery
            ? thresholdDelta(this.lastQuery.state, this.lastQuery.count, queryState, doc.configurations.length)
            : null;
        this.lastQuery = { state: queryState, count: doc.configurations.length };
        const results = this.root.querySelector('#results');
        if (results) results.innerHTML = renderResultsGrid(doc, this.index, { delta });
        const panel = this.root.querySelector('#uncertainty');
        if (panel) panel.innerHTML = renderUncertaintyPanel(uncertain, this.index);
    }
}
