/**
 * Wire types for the configurator API. These mirror the service's JSON
 * shapes exactly; the client never derives verdicts of its own.
 */

export type JustificationLevel = 'primary' | 'empirical' | 'secondary' | 'observation';

export type CertaintyGrade = JustificationLevel | 'default';

export interface JustificationObj {
    level: JustificationLevel;
    source: string;
}

export interface ClaimObj {
    polarity: 'compatible' | 'incompatible';
    scope: 'direct' | 'configuration';
    subjects: [string, string];
    condition: { mediator: string } | null;
    justification: JustificationObj;
}

export interface ConnectionExplanation {
    kind: 'connection';
    endpoints: [[string, string], [string, string]];
    port_type: string;
    orientations: [string, string];
    basis: 'default' | 'evidence';
    strength: JustificationLevel | null;
    claims: ClaimObj[];
}

export interface MediationExplanation {
    kind: 'mediation';
    pair: [string, string];
    mediator: string;
    strength: JustificationLevel;
    claims: ClaimObj[];
}

export type Explanation = ConnectionExplanation | MediationExplanation;

export interface ConfigurationObj {
    products: string[];
    matching: [[string, string], [string, string]][];
    certainty: CertaintyGrade;
    explanations: Explanation[];
}

export interface QueryObj {
    application: string;
    size_k: number;
    min_justification: JustificationLevel | null;
    extra_required_attributes: [string, string, string][];
}

export interface UncertaintyObj {
    pair: [string, string];
    reason: 'default_only' | 'conflict' | 'below_threshold';
    details: string;
}

export interface ResultDocument {
    query: QueryObj;
    configurations: ConfigurationObj[];
    uncertain: UncertaintyObj[];
    truncated: boolean;
}

export interface ProductObj {
    id: string;
    display_name: string;
    manufacturer: string;
    type: string | null;
    subtype: string | null;
    ports: { id: string; orientation: string; port_type: string }[];
}

export interface ApiError {
    error_code: string;
    message: string;
}

/** Ordered weakest-first; used only for presentation (badge colors, deltas). */
export const GRADE_ORDER: CertaintyGrade[] = ['default', 'observation', 'secondary', 'empirical', 'primary'];

export const LEVELS: JustificationLevel[] = ['observation', 'secondary', 'empirical', 'primary'];
