/**
 * Pure HTML builders for the wizard. No DOM access, no rule evaluation:
 * every verdict, grade and detail string is rendered verbatim from an API
 * response, which keeps these functions trivially testable in node.
 */

import type {
    CertaintyGrade,
    ConfigurationObj,
    Explanation,
    ProductObj,
    ResultDocument,
    UncertaintyObj,
} from './types.js';
import type { RequirementChip, WizardState } from './state.js';
import { LEVELS } from './types.js';

export function escapeHtml(text: string): string {
    return text
        .replace(/&/g, '&amp;')
        .replace(/</g, '&lt;')
        .replace(/>/g, '&gt;')
        .replace(/"/g, '&quot;')
        .replace(/'/g, '&#39;');
}

export type NameIndex = Map<string, ProductObj>;

export function buildNameIndex(products: ProductObj[]): NameIndex {
    return new Map(products.map((p) => [p.id, p]));
}

function displayName(index: NameIndex, id: string): string {
    return index.get(id)?.display_name ?? id;
}

// ---------------------------------------------------------------------------
// stepper

export function renderStepper(active: 1 | 2 | 3): string {
    const steps = ['Application', 'Size & certainty', 'Results'];
    const items = steps
        .map((label, i) => {
            const cls = i + 1 === active ? 'step active' : i + 1 < active ? 'step done' : 'step';
            return `<li class="${cls}" data-step="${i + 1}">${escapeHtml(label)}</li>`;
        })
        .join('');
    return `<ol class="stepper">${items}</ol>`;
}

export function renderApplicationStep(applications: string[], state: WizardState): string {
    const options = applications
        .map((app) => {
            const sel = app === state.application ? ' checked' : '';
            return `<label class="app-option"><input type="radio" name="application" value="${escapeHtml(app)}"${sel}><span>${escapeHtml(app)}</span></label>`;
        })
        .join('\n');
    return `<fieldset id="application-step" data-error="">
<legend>Application</legend>
${options}
<p class="field-error" id="error-application" hidden></p>
</fieldset>`;
}

export function renderSizeStep(state: WizardState): string {
    const sizes = [4, 5]
        .map((k) => {
            const sel = k === state.sizeK ? ' checked' : '';
            const hint = k === 5 ? ' (with flange adapter)' : '';
            return `<label><input type="radio" name="size" value="${k}"${sel}><span>${k} products${hint}</span></label>`;
        })
        .join('\n');
    const levels = ['', ...LEVELS]
        .map((lvl) => {
            const sel = (lvl || null) === state.minJustification ? ' selected' : '';
            const label = lvl === '' ? 'no minimum' : lvl;
            return `<option value="${lvl}"${sel}>${escapeHtml(label)}</option>`;
        })
        .join('');
    return `<fieldset id="size-step">
<legend>System size and certainty</legend>
${sizes}
<label>Minimum evidence <select name="min_justification">${levels}</select></label>
<p class="field-error" id="error-size" hidden></p>
<p class="field-error" id="error-min_justification" hidden></p>
</fieldset>`;
}

export function renderChips(chips: RequirementChip[]): string {
    if (!chips.length) return '<p class="chips empty">No extra requirements.</p>';
    const items = chips
        .map(
            (c, i) =>
                `<span class="chip" data-chip="${i}">${escapeHtml(c.productType)}: ${escapeHtml(c.name)} = ${escapeHtml(c.value)} <button type="button" class="chip-remove" data-chip="${i}" aria-label="remove">×</button></span>`,
        )
        .join('');
    return `<p class="chips">${items}</p>`;
}

// ---------------------------------------------------------------------------
// results

export function certaintyBadge(grade: CertaintyGrade): string {
    return `<span class="badge badge-${grade}">${grade}</span>`;
}

function renderExplanation(entry: Explanation, index: NameIndex): string {
    if (entry.kind === 'connection') {
        const [[pa, porta], [pb, portb]] = entry.endpoints;
        const head =
            `${escapeHtml(displayName(index, pa))}:${escapeHtml(porta)} (${entry.orientations[0]}) ↔ ` +
            `${escapeHtml(displayName(index, pb))}:${escapeHtml(portb)} (${entry.orientations[1]}) · ${escapeHtml(entry.port_type)}`;
        const body =
            entry.basis === 'default'
                ? '<em>default assumption: same interface, no contrary evidence</em>'
                : entry.claims
                      .map(
                          (c) =>
                              `${c.polarity} [${c.justification.level}] ${escapeHtml(c.justification.source)}`,
                      )
                      .join('<br>');
        return `<li class="evidence connection"><span class="endpoints">${head}</span><div class="basis">${body}</div></li>`;
    }
    const [a, b] = entry.pair;
    return `<li class="evidence mediation">${escapeHtml(displayName(index, a))} and ${escapeHtml(displayName(index, b))} coexist only via <strong>${escapeHtml(displayName(index, entry.mediator))}</strong> [${entry.strength}]</li>`;
}

export function renderConfigurationCard(cfg: ConfigurationObj, index: NameIndex, ordinal: number): string {
    const devices = cfg.products
        .map((pid) => {
            const p = index.get(pid);
            const type = p?.type ?? 'product';
            const sub = p?.subtype ? ` data-subtype="${escapeHtml(p.subtype)}"` : '';
            return `<li class="device" data-type="${escapeHtml(type)}"${sub}>${escapeHtml(displayName(index, pid))}</li>`;
        })
        .join('');
    const trail = cfg.explanations.map((e) => renderExplanation(e, index)).join('');
    return `<article class="config-card" data-index="${ordinal}" data-certainty="${cfg.certainty}">
<header>#${ordinal} ${certaintyBadge(cfg.certainty)}</header>
<ul class="devices">${devices}</ul>
<details class="trail"><summary>Evidence trail (${cfg.explanations.length})</summary><ul>${trail}</ul></details>
</article>`;
}

export interface GridContext {
    delta: { delta: number; violated: boolean } | null;
}

export function renderResultsGrid(doc: ResultDocument, index: NameIndex, ctx: GridContext = { delta: null }): string {
    const header: string[] = [];
    header.push(`<p class="result-count">${doc.configurations.length} valid configuration(s)</p>`);
    if (doc.truncated) {
        header.push('<p class="truncated-note">Result list truncated by the server cap; refine the query.</p>');
    }
    if (ctx.delta) {
        const text = ctx.delta.violated
            ? `monotonicity violation: count grew by ${ctx.delta.delta} after raising the threshold`
            : `${-ctx.delta.delta} fewer than at the weaker threshold`;
        header.push(`<p class="threshold-delta${ctx.delta.violated ? ' violated' : ''}">${text}</p>`);
    }
    if (!doc.configurations.length) {
        return `${header.join('')}<div class="empty-results">No valid configurations for this query; see the uncertainty panel for pairs where evidence is missing or contested.</div>`;
    }
    const cards = doc.configurations.map((cfg, i) => renderConfigurationCard(cfg, index, i)).join('\n');
    return `${header.join('')}<section class="results-grid">${cards}</section>`;
}

export function renderUncertaintyPanel(entries: UncertaintyObj[], index: NameIndex): string {
    if (!entries.length) return '<section class="uncertainty"><h2>Uncertain pairs</h2><p>None.</p></section>';
    const rows = entries
        .map(
            (e) =>
                `<tr class="reason-${e.reason}"><td>${escapeHtml(displayName(index, e.pair[0]))}</td><td>${escapeHtml(displayName(index, e.pair[1]))}</td><td>${e.reason}</td><td>${escapeHtml(e.details)}</td></tr>`,
        )
        .join('');
    return `<section class="uncertainty"><h2>Uncertain pairs</h2><table><thead><tr><th>product</th><th>product</th><th>reason</th><th>details</th></tr></thead><tbody>${rows}</tbody></table></section>`;
}

// ---------------------------------------------------------------------------
// error states

export function renderUnreachableBanner(detail: string): string {
    return `<div class="banner unreachable" role="alert">Configurator service unreachable (${escapeHtml(detail)}). <button type="button" id="retry">Retry</button></div>`;
}

/** Which control a structured 400 belongs to. */
export function fieldForErrorCode(errorCode: string): 'application' | 'size' | 'min_justification' | null {
    switch (errorCode) {
        case 'unknown_application':
            return 'application';
        case 'invalid_size':
            return 'size';
        case 'invalid_justification':
            return 'min_justification';
        default:
            return null;
    }
}
