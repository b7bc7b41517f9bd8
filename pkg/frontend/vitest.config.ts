// plain object config: vitest is provided by the globally installed runner
export default {
    test: {
        include: ['tests/**/*.test.ts'],
        environment: 'node',
        testTimeout: 30000,
        hookTimeout: 60000,
    },
};
