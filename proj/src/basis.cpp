#include "cantor/basis.hpp"

#include <json.hpp>

#include <algorithm>

namespace cantor {

int BaseSpec::q(std::size_t k) const {
    if (k == 0) throw std::out_of_range("base sequence is indexed from 1");
    if (k <= preperiod.size()) return preperiod[k - 1];
    if (period.empty()) throw std::logic_error("base spec has an empty period");
    return period[(k - 1 - preperiod.size()) % period.size()];
}

int BaseSpec::max_base() const {
    int m = 0;
    for (int v : preperiod) m = std::max(m, v);
    for (int v : period) m = std::max(m, v);
    return m;
}

std::vector<SpecViolation> validate(const BaseSpec& spec) {
    std::vector<SpecViolation> out;
    for (std::size_t i = 0; i < spec.preperiod.size(); ++i) {
        if (spec.preperiod[i] <= 1)
            out.push_back({"q_" + std::to_string(i + 1) + " ≤ 1"});
    }
    for (std::size_t i = 0; i < spec.period.size(); ++i) {
        if (spec.period[i] <= 1)
            out.push_back({"q_" + std::to_string(spec.preperiod.size() + i + 1) + " ≤ 1 (period entry " +
                           std::to_string(i + 1) + ")"});
    }
    if (spec.period.empty()) out.push_back({"empty period"});
    if (spec.cap < spec.max_base())
        out.push_back({"cap " + std::to_string(spec.cap) + " < max q_k " + std::to_string(spec.max_base())});
    return out;
}

void require_valid(const BaseSpec& spec) {
    const auto violations = validate(spec);
    if (violations.empty()) return;
    std::string msg = "invalid base spec:";
    for (const auto& v : violations) msg += " " + v.message + ";";
    throw std::invalid_argument(msg);
}

Alphabet alphabet(const BaseSpec& spec, std::size_t level) { return {level, spec.q(level)}; }

std::size_t parity_period(const BaseSpec& spec) { return lcm_size(spec.period_length(), 2); }

Rational a0_exact(const BaseSpec& spec) {
    require_valid(spec);
    // sum_k c_k prod_{j<k} 1/q_j with c_k = (q_k - 1)/q_k at even k
    return eventually_periodic_sum(spec.preperiod_length(), parity_period(spec), [&](std::size_t k) {
        const int qk = spec.q(k);
        const Rational inv(1, qk);
        return SeriesTerm{k % 2 == 0 ? Rational(qk - 1, qk) : Rational(0), inv};
    });
}

Enclosure a0(const BaseSpec& spec, const Rational& tol) {
    if (tol.sign() <= 0) throw std::domain_error("a0 tolerance must be positive");
    return Enclosure::point(a0_exact(spec));
}

BaseSpec shifted(const BaseSpec& spec, std::size_t n) {
    require_valid(spec);
    BaseSpec out;
    out.cap = spec.cap;
    if (n <= spec.preperiod.size()) {
        out.preperiod.assign(spec.preperiod.begin() + static_cast<std::ptrdiff_t>(n), spec.preperiod.end());
        out.period = spec.period;
        return out;
    }
    const std::size_t p = spec.period.size();
    const std::size_t r = (n - spec.preperiod.size()) % p;
    out.period.reserve(p);
    for (std::size_t i = 0; i < p; ++i) out.period.push_back(spec.period[(r + i) % p]);
    return out;
}

Integer base_product(const BaseSpec& spec, std::size_t n) {
    Integer p = 1;
    for (std::size_t k = 1; k <= n; ++k) p *= spec.q(k);
    return p;
}

BaseSpec parse_base_spec_json(std::string_view json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("base spec is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("base spec must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (key != "preperiod" && key != "period" && key != "cap")
            throw std::invalid_argument("unknown base spec field '" + key + "'");
    }
    auto int_list = [&](const char* key) {
        std::vector<int> out;
        if (!j.contains(key)) return out;
        if (!j[key].is_array()) throw std::invalid_argument(std::string(key) + " must be an array");
        for (const auto& v : j[key]) {
            if (!v.is_number_integer()) throw std::invalid_argument(std::string(key) + " entries must be integers");
            out.push_back(v.get<int>());
        }
        return out;
    };
    BaseSpec spec;
    spec.preperiod = int_list("preperiod");
    spec.period = int_list("period");
    if (!j.contains("cap")) {
        spec.cap = spec.max_base();
    } else {
        if (!j["cap"].is_number_integer()) throw std::invalid_argument("cap must be an integer");
        spec.cap = j["cap"].get<int>();
    }
    require_valid(spec);
    return spec;
}

std::string base_spec_to_json(const BaseSpec& spec) {
    nlohmann::json j;
    j["preperiod"] = spec.preperiod;
    j["period"] = spec.period;
    j["cap"] = spec.cap;
    return j.dump();
}

}  // namespace cantor
