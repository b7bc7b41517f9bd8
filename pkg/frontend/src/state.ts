/**
 * Wizard state and its URL form.
 *
 * The entire wizard is reconstructible from the query string, so any view is
 * shareable and a deep link reproduces the same query (and, for an unchanged
 * catalog, the same results). parseState(serializeState(s)) === s.
 */

import type { JustificationLevel, ResultDocument } from './types.js';
import { LEVELS } from './types.js';

export interface RequirementChip {
    productType: string;
    name: string;
    value: string;
}

export interface WizardState {
    application: string;
    sizeK: 4 | 5;
    minJustification: JustificationLevel | null;
    chips: RequirementChip[];
}

export interface QueryOutcome {
    document: ResultDocument | null;
    truncated: boolean;
}

export const DEFAULT_STATE: WizardState = {
    application: 'any',
    sizeK: 4,
    minJustification: null,
    chips: [],
};

export function serializeState(state: WizardState): string {
    const params = new URLSearchParams();
    if (state.application !== DEFAULT_STATE.application) params.set('application', state.application);
    if (state.sizeK !== DEFAULT_STATE.sizeK) params.set('size', String(state.sizeK));
    if (state.minJustification) params.set('min_justification', state.minJustification);
    for (const chip of state.chips) {
        params.append('require', `${chip.productType}:${chip.name}=${chip.value}`);
    }
    return params.toString();
}

export function parseState(query: string): WizardState {
    const params = new URLSearchParams(query);
    const application = params.get('application') ?? DEFAULT_STATE.application;
    const size = params.get('size');
    const sizeK = size === '5' ? 5 : 4;
    const rawLevel = params.get('min_justification');
    const minJustification = LEVELS.includes(rawLevel as JustificationLevel)
        ? (rawLevel as JustificationLevel)
        : null;
    const chips: RequirementChip[] = [];
    for (const raw of params.getAll('require')) {
        const chip = parseChip(raw);
        if (chip) chips.push(chip);
    }
    return { application, sizeK, minJustification, chips };
}

export function parseChip(raw: string): RequirementChip | null {
    const eq = raw.indexOf('=');
    const colon = raw.indexOf(':');
    if (colon <= 0 || eq <= colon + 1) return null;
    const productType = raw.slice(0, colon);
    const name = raw.slice(colon + 1, eq);
    const value = raw.slice(eq + 1);
    if (!productType || !name) return null;
    return { productType, name, value };
}

export function statesEqual(a: WizardState, b: WizardState): boolean {
    return serializeState(a) === serializeState(b);
}

/** Body for POST /api/configure; built from state only, never from results. */
export function configureBody(state: WizardState): object {
    return {
        application: state.application,
        size_k: state.sizeK,
        min_justification: state.minJustification,
        extra_required_attributes: state.chips.map((c) => [c.productType, c.name, c.value]),
    };
}

/**
 * Presentation-only sanity delta: when the new state differs from the old one
 * solely by a stricter evidence threshold, the result count must not grow.
 * Returns the delta to display, or null when the states are not comparable.
 */
export function thresholdDelta(
    oldState: WizardState,
    oldCount: number,
    newState: WizardState,
    newCount: number,
): { delta: number; violated: boolean } | null {
    const rank = (lvl: JustificationLevel | null) => (lvl === null ? 0 : LEVELS.indexOf(lvl) + 1);
    const sameOtherwise =
        oldState.application === newState.application &&
        oldState.sizeK === newState.sizeK &&
        serializeChips(oldState) === serializeChips(newState);
    if (!sameOtherwise || rank(newState.minJustification) <= rank(oldState.minJustification)) return null;
    return { delta: newCount - oldCount, violated: newCount > oldCount };
}

function serializeChips(state: WizardState): string {
    return state.chips.map((c) => `${c.productType}:${c.name}=${c.value}`).join('|');
}
