/**
 * Typed fetch wrappers plus the single-in-flight query guard.
 *
 * Every displayed verdict comes verbatim from these responses; the client
 * evaluates no rules. Superseded queries are ignored by sequence number, so
 * out-of-order responses can never clobber a newer view.
 */

import type { ApiError, ProductObj, ResultDocument, UncertaintyObj } from './types.js';
import type { WizardState } from './state.js';
import { configureBody } from './state.js';

export class ServiceError extends Error {
    constructor(
        public readonly errorCode: string,
        message: string,
        public readonly status: number,
    ) {
        super(message);
    }
}

async function parseError(response: Response): Promise<never> {
    let payload: ApiError | null = null;
    try {
        payload = (await response.json()) as ApiError;
    } catch {
        // non-JSON error body; fall through to a generic error
    }
    throw new ServiceError(payload?.error_code ?? 'http_error', payload?.message ?? response.statusText, response.status);
}

export class ApiClient {
    constructor(private readonly baseUrl: string = '') {}

    private async getJson<T>(path: string): Promise<T> {
        const response = await fetch(`${this.baseUrl}${path}`);
        if (!response.ok) await parseError(response);
        return (await response.json()) as T;
    }

    applications(): Promise<string[]> {
        return this.getJson<string[]>('/api/applications');
    }

    products(type?: string): Promise<ProductObj[]> {
        const suffix = type ? `?type=${encodeURIComponent(type)}` : '';
        return this.getJson<ProductObj[]>(`/api/products${suffix}`);
    }

    uncertain(minJustification: string | null): Promise<UncertaintyObj[]> {
        const suffix = minJustification ? `?min_justification=${encodeURIComponent(minJustification)}` : '';
        return this.getJson<UncertaintyObj[]>(`/api/uncertain${suffix}`);
    }

    async configure(state: WizardState): Promise<ResultDocument> {
        const response = await fetch(`${this.baseUrl}/api/configure`, {
            method: 'POST',
            headers: { 'content-type': 'application/json' },
            body: JSON.stringify(configureBody(state)),
        });
        if (!response.ok) await parseError(response);
        return (await response.json()) as ResultDocument;
    }
}

/**
 * Serializes queries: each run() invalidates all earlier ones, and a stale
 * response resolves to null instead of delivering outdated data.
 */
export class QuerySequencer {
    private seq = 0;

    async run<T>(task: () => Promise<T>): Promise<T | null> {
        const ticket = ++this.seq;
        const value = await task();
        return ticket === this.seq ? value : null;
    }

    get current(): number {
        return this.seq;
    }
}
