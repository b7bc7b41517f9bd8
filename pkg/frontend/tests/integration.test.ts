/**
 * Scripted round-trip against the real service: spawns `robocim serve` on the
 * bundled 20-product catalog and drives the exact state -> query -> render
 * pipeline the browser runs (no client-side rule evaluation anywhere).
 */

import { spawn, ChildProcess } from 'node:child_process';
import { fileURLToPath } from 'node:url';
import { dirname, join } from 'node:path';
import { afterAll, beforeAll, describe, expect, it } from 'vitest';

import { ApiClient, QuerySequencer } from '../src/api';
import { parseState, serializeState, WizardState } from '../src/state';
import { buildNameIndex, NameIndex, renderResultsGrid, renderUncertaintyPanel } from '../src/render';
import type { JustificationLevel } from '../src/types';

const HERE = dirname(fileURLToPath(import.meta.url));
const REPO_ROOT = join(HERE, '..', '..');
const CATALOG = join(REPO_ROOT, 'tests', 'fixtures', 'fullsize20.json');
const PORT = 8931;
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess;
let api: ApiClient;
let index: NameIndex;

async function waitForHealth(): Promise<void> {
    for (let attempt = 0; attempt < 100; attempt++) {
        try {
            const r = await fetch(`${BASE}/api/health`);
            if (r.ok) return;
        } catch {
            // not up yet
        }
        await new Promise((resolve) => setTimeout(resolve, 150));
    }
    throw new Error('service did not come up');
}

beforeAll(async () => {
    server = spawn('python3', ['-m', 'robocim.cli', 'serve', CATALOG, '--bind', `127.0.0.1:${PORT}`], {
        cwd: REPO_ROOT,
        stdio: 'ignore',
    });
    await waitForHealth();
    api = new ApiClient(BASE);
    index = buildNameIndex(await api.products());
});

afterAll(() => {
    server?.kill();
});

function gridSubtypes(html: string): string[] {
    return [...html.matchAll(/data-type="end_effector" data-subtype="([^"]+)"/g)].map((m) => m[1]);
}

function cardCount(html: string): number {
    return [...html.matchAll(/class="config-card"/g)].length;
}

describe('wizard round-trip against the live service', () => {
    it('screwdriving shows only screwdriver end effectors in the grid', async () => {
        const state = parseState('application=screwdriving');
        const doc = await api.configure(state);
        expect(doc.configurations.length).toBeGreaterThan(0);
        const html = renderResultsGrid(doc, index);
        const subtypes = gridSubtypes(html);
        expect(subtypes.length).toBe(doc.configurations.length); // one end effector per card
        expect(new Set(subtypes)).toEqual(new Set(['screwdriver']));
    });

    it('raising the threshold never increases the rendered count', async () => {
        const ladder: (JustificationLevel | null)[] = [null, 'observation', 'secondary', 'empirical', 'primary'];
        let previous = Infinity;
        for (const level of ladder) {
            const state: WizardState = {
                application: 'any',
                sizeK: 4,
                minJustification: level,
                chips: [],
            };
            const doc = await api.configure(state);
            const rendered = cardCount(renderResultsGrid(doc, index));
            expect(rendered).toBe(doc.configurations.length);
            expect(rendered).toBeLessThanOrEqual(previous);
            previous = rendered;
        }
    });

    it('deep-link reload reproduces the identical rendered list', async () => {
        const original: WizardState = {
            application: 'pick-and-place',
            sizeK: 4,
            minJustification: 'observation',
            chips: [],
        };
        const firstDoc = await api.configure(original);
        const firstHtml = renderResultsGrid(firstDoc, index);

        // share the URL, reconstruct the state in a "fresh tab", re-query
        const url = serializeState(original);
        const restored = parseState(url);
        expect(restored).toEqual(original);
        const secondDoc = await api.configure(restored);
        expect(secondDoc).toEqual(firstDoc);
        expect(renderResultsGrid(secondDoc, index)).toBe(firstHtml);
    });

    it('empty results render the explicit no-configurations state', async () => {
        const state: WizardState = {
            application: 'screwdriving',
            sizeK: 4,
            minJustification: 'primary',
            chips: [],
        };
        const doc = await api.configure(state);
        expect(doc.configurations).toEqual([]);
        expect(renderResultsGrid(doc, index)).toContain('No valid configurations');
    });

    it('uncertainty panel renders live report entries', async () => {
        const entries = await api.uncertain(null);
        expect(entries.length).toBeGreaterThan(0);
        const html = renderUncertaintyPanel(entries, index);
        expect(html).toContain('default_only');
    });

    it('structured 400s carry the machine-readable code', async () => {
        const bad: WizardState = { application: 'any', sizeK: 3 as unknown as 4, minJustification: null, chips: [] };
        await expect(api.configure(bad)).rejects.toMatchObject({ errorCode: 'invalid_size', status: 400 });
    });

    it('superseded queries are dropped by the sequencer', async () => {
        const sequencer = new QuerySequencer();
        let slowDone = false;
        const slow = sequencer.run(async () => {
            await new Promise((resolve) => setTimeout(resolve, 250));
            slowDone = true;
            return 'slow';
        });
        const fast = sequencer.run(async () => 'fast');
        expect(await fast).toBe('fast');
        expect(await slow).toBeNull(); // completed but discarded
        expect(slowDone).toBe(true);
    });
});
