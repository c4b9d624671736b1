#include "wdam/instance.hpp"

namespace wdam {

WeightVector validate_weights(const std::vector<Rat>& taus, unsigned d, unsigned m) {
    if (d == 0 || m == 0) throw ValidationError("d and m must be positive");
    if (taus.size() != static_cast<size_t>(d) + m)
        throw ValidationError("weight count does not equal d + m");

    for (const auto& t : taus)
        if (t <= 0) throw NonPositiveWeight("all weights must be positive");

    for (unsigned i = 0; i + 1 < d; ++i)
        if (taus[i] < taus[i + 1])
            throw OrderingViolated("tau_" + std::to_string(i + 1) + " < tau_" +
                                   std::to_string(i + 2));
    for (unsigned j = 0; j < m; ++j)
        if (taus[d - 1] < taus[d + j])
            throw OrderingViolated("tau_d < tau_" + std::to_string(d + j + 1));

    Rat tail(0);
    for (unsigned j = 0; j < m; ++j) tail += taus[d + j];
    if (tail >= 1) throw TailSumTooLarge("tail weight sum must be < 1, got " +
                                         to_fraction_string(tail));

    return WeightVector{d, m, taus};
}

std::vector<Rat> eval_f(const ManifoldSpec& spec, const std::vector<Rat>& x) {
    if (!spec.domain.contains(x)) throw OutOfDomain("evaluation point outside the domain box");
    std::vector<Rat> out;
    out.reserve(spec.components.size());
    for (const auto& f : spec.components) out.push_back(f.eval(x));
    return out;
}

std::vector<std::vector<Polynomial>> first_partials(const ManifoldSpec& spec) {
    std::vector<std::vector<Polynomial>> out;
    out.reserve(spec.m);
    for (const auto& f : spec.components) {
        std::vector<Polynomial> row;
        row.reserve(spec.d);
        for (unsigned i = 0; i < spec.d; ++i) row.push_back(f.partial(i));
        out.push_back(std::move(row));
    }
    return out;
}

std::vector<std::vector<std::vector<Polynomial>>> second_partials(const ManifoldSpec& spec) {
    auto firsts = first_partials(spec);
    std::vector<std::vector<std::vector<Polynomial>>> out;
    out.reserve(spec.m);
    for (unsigned j = 0; j < spec.m; ++j) {
        std::vector<std::vector<Polynomial>> mat;
        mat.reserve(spec.d);
        for (unsigned i = 0; i < spec.d; ++i) {
            std::vector<Polynomial> row;
            row.reserve(spec.d);
            for (unsigned k = 0; k < spec.d; ++k) row.push_back(firsts[j][i].partial(k));
            mat.push_back(std::move(row));
        }
        out.push_back(std::move(mat));
    }
    return out;
}

DerivativeBounds derivative_bounds(const ManifoldSpec& spec) {
    DerivativeBounds b{Rat(0), Rat(0)};
    auto firsts = first_partials(spec);
    for (const auto& row : firsts)
        for (const auto& p : row) {
            Rat v = p.abs_bound_on(spec.domain);
            if (v > b.D) b.D = v;
        }
    auto seconds = second_partials(spec);
    for (const auto& mat : seconds)
        for (const auto& row : mat)
            for (const auto& p : row) {
                Rat v = p.abs_bound_on(spec.domain);
                if (v > b.C) b.C = v;
            }
    return b;
}

}  // namespace wdam
