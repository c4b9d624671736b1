#include "wdam/config.hpp"

#include <fstream>

namespace wdam {

namespace {

Rat rat_field(const nlohmann::json& j) {
    if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long>()));
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw ConfigError("expected a fraction/decimal string, got: " + j.dump());
}

}  // namespace

ProblemConfig load_problem(const nlohmann::json& j) {
    if (!j.contains("d") || !j.contains("m") || !j.contains("taus"))
        throw ConfigError("config requires fields d, m, taus");
    unsigned d = j.at("d").get<unsigned>();
    unsigned m = j.at("m").get<unsigned>();

    std::vector<Rat> taus;
    for (const auto& t : j.at("taus")) taus.push_back(rat_field(t));

    ProblemConfig cfg;
    cfg.weights = validate_weights(taus, d, m);

    if (j.contains("domain") || j.contains("components")) {
        if (!j.contains("domain") || !j.contains("components"))
            throw ConfigError("manifold instances need both domain and components");
        std::vector<Interval> axes;
        for (const auto& ax : j.at("domain")) {
            if (!ax.is_array() || ax.size() != 2)
                throw ConfigError("each domain axis must be a [lo, hi] pair");
            axes.push_back(Interval{rat_field(ax[0]), rat_field(ax[1])});
        }
        if (axes.size() != d) throw ConfigError("domain arity does not match d");

        ManifoldSpec spec;
        spec.d = d;
        spec.m = m;
        spec.domain = RationalBox(std::move(axes));
        for (const auto& comp : j.at("components")) {
            Polynomial poly(d);
            for (const auto& term : comp) {
                if (!term.is_array() || term.size() != 2)
                    throw ConfigError("each term must be [coefficient, multi-index]");
                Rat coeff = rat_field(term[0]);
                Polynomial::MultiIndex mi;
                for (const auto& e : term[1]) mi.push_back(e.get<unsigned>());
                if (mi.size() != d) throw ConfigError("multi-index arity does not match d");
                poly.add_term(coeff, mi);
            }
            spec.components.push_back(std::move(poly));
        }
        if (spec.components.size() != m)
            throw ConfigError("component count does not match m");
        cfg.manifold = std::move(spec);
    }
    return cfg;
}

ProblemConfig load_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    nlohmann::json j;
    in >> j;
    return load_problem(j);
}

nlohmann::json rational_json(const Rat& value) {
    return nlohmann::json{{"exact", to_fraction_string(value)},
                          {"approx", to_decimal_string(value)}};
}

}  // namespace wdam
