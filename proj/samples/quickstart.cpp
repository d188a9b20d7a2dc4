// Generate a certified instance, search it with a seeded run, and check the
// witness against the exact oracle.

#include <cstdio>

#include <monopat/monopat.hpp>

int main() {
    using namespace monopat;

    InstanceSpec spec{InstanceStyle::blocks, 4096, 3, 0.25, 0};
    CertifiedInstance inst = gen_far_instance(spec);
    std::printf("instance: n=%lld, certified family of %zu disjoint 3-patterns\n",
                static_cast<long long>(spec.n), inst.family.size());

    auto view = SequenceView::over(inst.values);
    AlgorithmConstants consts;
    Rng rng(42);
    RunOutcome out = find_monotone(view, spec.k, spec.eps, 0.1, consts, rng);

    if (out.found()) {
        std::printf("found witness in %llu queries:",
                    static_cast<unsigned long long>(out.queries));
        for (std::size_t i = 0; i < out.witness->length(); ++i)
            std::printf(" f[%lld]=%g", static_cast<long long>(out.witness->indices[i]),
                        out.witness->values[i]);
        std::printf("\n");
        bool ok = verify_witness(inst.values, *out.witness, view.interval(), view.range());
        std::printf("re-verified: %s\n", ok ? "yes" : "NO");
        return ok ? 0 : 1;
    }
    std::printf("no witness after %llu queries\n",
                static_cast<unsigned long long>(out.queries));

    // the exact oracle settles it either way
    std::printf("exact lis length: %zu\n", lis_length(inst.values));
    return 0;
}
