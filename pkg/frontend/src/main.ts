import { ApiClient } from './api.js';
import { WizardApp } from './app.js';

const root = document.getElementById('app');
if (!root) throw new Error('missing #app element');

// same-origin by default; override for a detached dev service
const base = root.dataset.apiBase ?? '';
void new WizardApp(root, new ApiClient(base)).start();
