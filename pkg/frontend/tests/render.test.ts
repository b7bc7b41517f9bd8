import { describe, expect, it } from 'vitest';

import {
    buildNameIndex,
    certaintyBadge,
    escapeHtml,
    fieldForErrorCode,
    renderResultsGrid,
    renderUncertaintyPanel,
    renderUnreachableBanner,
} from '../src/render';
import type { ProductObj, ResultDocument } from '../src/types';

const PRODUCTS: ProductObj[] = [
    { id: 'arm_1', display_name: 'Arm One', manufacturer: 'M', type: 'robotic_arm', subtype: null, ports: [] },
    { id: 'eecd_1', display_name: 'Coupler One', manufacturer: 'M', type: 'eecd', subtype: null, ports: [] },
    {
        id: 'ee_1',
        display_name: 'Driver One',
        manufacturer: 'M',
        type: 'end_effector',
        subtype: 'screwdriver',
        ports: [],
    },
    { id: 'dc_1', display_name: 'Link One', manufacturer: 'M', type: 'data_connection', subtype: null, ports: [] },
];

const DOC: ResultDocument = {
    query: { application: 'any', size_k: 4, min_justification: null, extra_required_attributes: [] },
    configurations: [
        {
            products: ['arm_1', 'eecd_1', 'ee_1', 'dc_1'],
            matching: [
                [
                    ['arm_1', 'flange'],
                    ['eecd_1', 'arm_side'],
                ],
            ],
            certainty: 'empirical',
            explanations: [
                {
                    kind: 'connection',
                    endpoints: [
                        ['arm_1', 'flange'],
                        ['eecd_1', 'arm_side'],
                    ],
                    port_type: 'iso9409-1-50-4-M6',
                    orientations: ['output', 'input'],
                    basis: 'evidence',
                    strength: 'empirical',
                    claims: [
                        {
                            polarity: 'compatible',
                            scope: 'direct',
                            subjects: ['arm_1', 'eecd_1'],
                            condition: null,
                            justification: { level: 'empirical', source: 'fit test <FT-1>' },
                        },
                    ],
                },
                {
                    kind: 'mediation',
                    pair: ['arm_1', 'eecd_1'],
                    mediator: 'dc_1',
                    strength: 'primary',
                    claims: [],
                },
            ],
        },
    ],
    uncertain: [{ pair: ['arm_1', 'dc_1'], reason: 'default_only', details: 'no evidence either way' }],
    truncated: false,
};

const INDEX = buildNameIndex(PRODUCTS);

describe('results grid', () => {
    it('renders device names, types and certainty badge per configuration', () => {
        const html = renderResultsGrid(DOC, INDEX);
        expect(html).toContain('1 valid configuration(s)');
        expect(html).toContain('Arm One');
        expect(html).toContain('data-type="end_effector"');
        expect(html).toContain('data-subtype="screwdriver"');
        expect(html).toContain('badge badge-empirical');
        expect(html).toContain('data-certainty="empirical"');
    });

    it('renders the evidence trail verbatim from the API payload', () => {
        const html = renderResultsGrid(DOC, INDEX);
        expect(html).toContain('Evidence trail (2)');
        expect(html).toContain('compatible [empirical] fit test &lt;FT-1&gt;'); // escaped source text
        expect(html).toContain('coexist only via <strong>Link One</strong> [primary]');
        expect(html).toContain('iso9409-1-50-4-M6');
    });

    it('renders the explicit empty state instead of a blank grid', () => {
        const empty: ResultDocument = { ...DOC, configurations: [] };
        const html = renderResultsGrid(empty, INDEX);
        expect(html).toContain('No valid configurations');
        expect(html).toContain('uncertainty panel');
        expect(html).not.toContain('config-card');
    });

    it('shows the truncation note when the server capped the list', () => {
        const truncated: ResultDocument = { ...DOC, truncated: true };
        expect(renderResultsGrid(truncated, INDEX)).toContain('truncated by the server cap');
    });

    it('shows the threshold delta and flags violations', () => {
        const ok = renderResultsGrid(DOC, INDEX, { delta: { delta: -4, violated: false } });
        expect(ok).toContain('4 fewer than at the weaker threshold');
        const bad = renderResultsGrid(DOC, INDEX, { delta: { delta: 2, violated: true } });
        expect(bad).toContain('monotonicity violation');
    });

    it('renders a default-assumption connection with the standard phrase', () => {
        const doc: ResultDocument = structuredClone(DOC);
        const conn = doc.configurations[0].explanations[0];
        if (conn.kind === 'connection') {
            conn.basis = 'default';
            conn.strength = null;
            conn.claims = [];
        }
        expect(renderResultsGrid(doc, INDEX)).toContain('default assumption: same interface, no contrary evidence');
    });
});

describe('uncertainty panel', () => {
    it('lists pairs with reason and details', () => {
        const html = renderUncertaintyPanel(DOC.uncertain, INDEX);
        expect(html).toContain('Arm One');
        expect(html).toContain('default_only');
        expect(html).toContain('no evidence either way');
    });

    it('renders a quiet empty state', () => {
        expect(renderUncertaintyPanel([], INDEX)).toContain('None.');
    });
});

describe('error presentation', () => {
    it('escapes text interpolated into markup', () => {
        expect(escapeHtml('<script>"a"&\'b\'</script>')).toBe(
            '&lt;script&gt;&quot;a&quot;&amp;&#39;b&#39;&lt;/script&gt;',
        );
    });

    it('maps structured error codes onto the offending control', () => {
        expect(fieldForErrorCode('invalid_size')).toBe('size');
        expect(fieldForErrorCode('unknown_application')).toBe('application');
        expect(fieldForErrorCode('invalid_justification')).toBe('min_justification');
        expect(fieldForErrorCode('internal_error')).toBeNull();
    });

    it('unreachable banner offers a retry control', () => {
        const html = renderUnreachableBanner('fetch failed');
        expect(html).toContain('id="retry"');
        expect(html).toContain('fetch failed');
    });
});

describe('badges', () => {
    it('colors every grade with its own class', () => {
        for (const grade of ['primary', 'empirical', 'secondary', 'observation', 'default'] as const) {
            expect(certaintyBadge(grade)).toContain(`badge-${grade}`);
        }
    });
});
