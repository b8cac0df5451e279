#include "cantor/cli.hpp"

#include "cantor/basis.hpp"
#include "cantor/codec.hpp"
#include "cantor/fractalh.hpp"
#include "cantor/mapf.hpp"
#include "cantor/numerics.hpp"
#include "cantor/salem.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

namespace cantor::cli {

using nlohmann::ordered_json;

namespace {

ordered_json num(const Rational& r) { return r.str(); }

ordered_json enclosure(const Enclosure& e) {
    ordered_json j;
    j["lo"] = num(e.lo);
    j["hi"] = num(e.hi);
    j["approx"] = e.midpoint().decimal(12);
    return j;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string inline_or_file(const std::string& inline_text, const std::string& path, const char* what) {
    if (!inline_text.empty() && !path.empty())
        throw std::invalid_argument(std::string("give either --") + what + " or --" + what + "-file, not both");
    if (!path.empty()) return read_file(path);
    if (inline_text.empty()) throw std::invalid_argument(std::string("--") + what + " or --" + what + "-file is required");
    return inline_text;
}

struct SpecSource {
    std::string text;
    std::string file;

    void add_to(CLI::App* app) {
        app->add_option("--spec", text, "base sequence as JSON {\"preperiod\":[..],\"period\":[..],\"cap\":q}");
        app->add_option("--spec-file", file, "file holding the base sequence JSON");
    }
    BaseSpec load() const { return parse_base_spec_json(inline_or_file(text, file, "spec")); }
};

struct MatrixSource {
    std::string text;
    std::string file;

    void add_to(CLI::App* app) {
        app->add_option("--matrix", text, "matrix as JSON {\"columns\":[[..],..],\"period_start\":k}");
        app->add_option("--matrix-file", file, "file holding the matrix JSON");
    }
    SalemMatrix load() const { return parse_salem_matrix_json(inline_or_file(text, file, "matrix")); }
};

struct ParamsSource {
    int q = 0;
    int u = 0;

    void add_to(CLI::App* app) {
        app->add_option("--q", q, "nega-q base (>= 4)")->required();
        app->add_option("--u", u, "the excluded digit u")->required();
    }
    FractalParams load() const {
        FractalParams p{q, u};
        require_valid(p);
        return p;
    }
};

ordered_json representation_json(const Representation& rep) {
    ordered_json j;
    j["polarity"] = to_string(rep.polarity);
    j["digits"] = format_digits(rep);
    switch (rep.tail) {
        case TailKind::Zeros: j["tail"] = "zeros"; break;
        case TailKind::Periodic: j["tail"] = "periodic"; break;
        case TailKind::Truncated: j["tail"] = "truncated"; break;
    }
    return j;
}

RunDigits run_digits_from_text(const FractalParams& params, const std::string& text) {
    const DigitText t = parse_digit_text(text);
    if (t.tail == TailKind::Zeros)
        throw std::invalid_argument("alphas need a periodic tail (\"a,b|c\") or a truncated one (\"a,b|...\")");
    RunDigits x{params, t.digits, t.tail == TailKind::Periodic ? RunTail::Periodic : RunTail::Truncated,
                t.tail_digits};
    validate_run_digits(x);
    return x;
}

std::string run_digits_text(const RunDigits& x) {
    Representation r = h_forward(x);
    return format_digits(r);
}

// Each verb builds its document; run() prints it.
using Action = std::function<ordered_json()>;

}  // namespace

std::vector<std::pair<std::string, std::string>> flatten(const ordered_json& doc) {
    std::vector<std::pair<std::string, std::string>> out;
    std::function<void(const ordered_json&, const std::string&)> walk = [&](const ordered_json& j,
                                                                           const std::string& prefix) {
        auto key = [&](const std::string& k) { return prefix.empty() ? k : prefix + "." + k; };
        if (j.is_object()) {
            for (const auto& [k, v] : j.items()) walk(v, key(k));
        } else if (j.is_array()) {
            for (std::size_t i = 0; i < j.size(); ++i) walk(j[i], key(std::to_string(i)));
        } else if (j.is_string()) {
            out.emplace_back(prefix, j.get<std::string>());
        } else if (j.is_null()) {
            out.emplace_back(prefix, "");
        } else {
            out.emplace_back(prefix, j.dump());
        }
    };
    walk(doc, "");
    return out;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

std::string csv_line(const std::vector<std::string>& fields) {
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) line += ',';
        line += csv_field(fields[i]);
    }
    return line + "\n";
}

}  // namespace

std::string to_csv(const ordered_json& doc) {
    std::vector<std::string> header, shared;
    ordered_json rest = doc;
    ordered_json rows = ordered_json::array();
    if (doc.contains("rows") && doc["rows"].is_array()) {
        rows = doc["rows"];
        rest.erase("rows");
    }
    for (const auto& [k, v] : flatten(rest)) {
        header.push_back(k);
        shared.push_back(v);
    }
    if (rows.empty()) return csv_line(header) + csv_line(shared);
    // Document-level fields repeat on every row.
    for (const auto& [k, v] : flatten(rows[0])) header.push_back(k);
    std::string out = csv_line(header);
    for (const auto& row : rows) {
        std::vector<std::string> fields = shared;
        for (const auto& [k, v] : flatten(row)) fields.push_back(v);
        out += csv_line(fields);
    }
    return out;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool quoted = false;
    bool any = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        any = true;
        if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            record.push_back(field);
            field.clear();
        } else if (c == '\n') {
            record.push_back(field);
            field.clear();
            records.push_back(record);
            record.clear();
            any = false;
        } else if (c != '\r') {
            field += c;
        }
    }
    if (quoted) throw std::invalid_argument("unterminated quoted CSV field");
    if (any) {
        record.push_back(field);
        records.push_back(record);
    }
    return records;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact Cantor-series, nega-Q and run-map computations", "cantor-atlas"};
    app.require_subcommand(1, 1);
    std::string format = "json";
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}));

    Action action;
    auto verb = [&](const char* name, const char* help) { return app.add_subcommand(name, help); };

    // encode
    SpecSource enc_spec;
    std::string enc_polarity = "alternating", enc_x;
    std::size_t enc_depth = 64;
    auto* enc = verb("encode", "digits of a rational number");
    enc_spec.add_to(enc);
    enc->add_option("--polarity", enc_polarity, "positive | alternating | nega");
    enc->add_option("--x", enc_x, "the number: p/q, decimal or scientific")->required();
    enc->add_option("--depth", enc_depth, "maximum number of digits");
    enc->callback([&] {
        action = [&] {
            const BaseSpec spec = enc_spec.load();
            const Rational x = Rational::parse(enc_x);
            const Polarity p = parse_polarity(enc_polarity);
            const Representation rep = p == Polarity::Positive      ? encode_positive(x, spec, enc_depth)
                                       : p == Polarity::Alternating ? encode_alternating(x, spec, enc_depth)
                                                                    : encode_nega(x, spec, enc_depth);
            ordered_json j;
            j["x"] = num(x);
            j["representation"] = representation_json(rep);
            const Enclosure v = decode(rep);
            j["lo"] = num(v.lo);
            j["hi"] = num(v.hi);
            if (rep.tail != TailKind::Truncated) {
                const RationalPoint rp = is_rational_point(rep);
                j["canonical"] = is_canonical(rep);
                j["dual"] = rp.dual;
                if (rp.dual) {
                    j["dual_digits"] = format_digits(*rp.other);
                    j["dual_level"] = rp.level;
                }
            }
            return j;
        };
    });

    // decode
    SpecSource dec_spec;
    std::string dec_polarity = "alternating", dec_digits;
    auto* dec = verb("decode", "value of a digit string");
    dec_spec.add_to(dec);
    dec->add_option("--polarity", dec_polarity, "positive | alternating | nega");
    dec->add_option("--digits", dec_digits, "digits: \"0,1\", \"1|0,1\" (periodic), \"1,2|...\" (truncated)")
        ->required();
    dec->callback([&] {
        action = [&] {
            const Representation rep = from_text(dec_spec.load(), parse_polarity(dec_polarity), dec_digits);
            const Enclosure v = decode(rep);
            ordered_json j;
            j["lo"] = num(v.lo);
            j["hi"] = num(v.hi);
            j["approx"] = v.midpoint().decimal(12);
            j["exact"] = v.is_exact();
            return j;
        };
    });

    // eval-f
    SpecSource f_spec;
    std::string f_digits;
    auto* evf = verb("eval-f", "image of an alternating representation under f");
    f_spec.add_to(evf);
    evf->add_option("--digits", f_digits, "alternating digits")->required();
    evf->callback([&] {
        action = [&] {
            const Representation rep = from_text(f_spec.load(), Polarity::Alternating, f_digits);
            ordered_json j;
            j["digits"] = format_digits(rep);
            j["x"] = enclosure(decode(rep));
            j["f"] = enclosure(eval_f(rep));
            return j;
        };
    });

    // jump
    SpecSource jump_spec;
    std::string jump_prefix;
    auto* jmp = verb("jump", "one-sided limits of f at a nega-Q-rational point");
    jump_spec.add_to(jmp);
    jmp->add_option("--prefix", jump_prefix, "digits e_1..e_n; the point is e_1..e_n followed by the kept tail")
        ->required();
    jmp->callback([&] {
        action = [&] {
            const BaseSpec spec = jump_spec.load();
            const DigitText t = parse_digit_text(jump_prefix);
            if (t.tail != TailKind::Zeros || t.digits.empty())
                throw std::invalid_argument("--prefix takes a nonempty finite digit list");
            const Representation point = with_extremal_tail(spec, Polarity::Alternating, t.digits, ExtremalTail::Min);
            validate_representation(point);
            const JumpReport r = jump_at(point, t.digits.size());
            ordered_json j;
            j["point"] = format_digits(point);
            j["x"] = num(decode_exact(point));
            j["level"] = r.level;
            j["left"] = num(r.left);
            j["right"] = num(r.right);
            j["jump"] = num(r.jump);
            j["formula"] = num(r.formula);
            j["formula_matches"] = r.jump == r.formula;
            return j;
        };
    });

    // classify
    SpecSource cls_spec;
    std::string cls_y;
    auto* cls = verb("classify", "discontinuity set of f, and range membership of a nega-q digit string");
    cls_spec.add_to(cls);
    cls->add_option("--y", cls_y, "nega-q digits to test against the range of f");
    cls->callback([&] {
        action = [&] {
            const BaseSpec spec = cls_spec.load();
            ordered_json j;
            j["discontinuities"] = to_string(classify_discontinuities(spec));
            j["a0"] = num(a0_exact(spec));
            if (!cls_y.empty()) {
                const Representation y = from_text(BaseSpec::constant(spec.cap), Polarity::NegaConstant, cls_y);
                const RangeReport r = range_membership(y, spec);
                j["range"] = to_string(r.verdict);
                if (r.verdict != RangeClass::InRange) j["range_level"] = r.level;
            }
            return j;
        };
    });

    // integral
    SpecSource int_spec;
    bool int_closed = false, int_riemann = false, int_both = false;
    std::size_t int_depth = 12;
    auto* itg = verb("integral", "integral of f: series formula and Darboux enclosure");
    int_spec.add_to(itg);
    itg->add_flag("--closed", int_closed, "series sum (q_k - 1)/(2 q^k)");
    itg->add_flag("--riemann", int_riemann, "Darboux sums over rank-depth cylinders");
    itg->add_flag("--both", int_both, "both, with a discrepancy flag");
    itg->add_option("--depth", int_depth, "cylinder rank for the Darboux sums");
    itg->callback([&] {
        action = [&] {
            const BaseSpec spec = int_spec.load();
            const bool closed = int_closed || int_both || !int_riemann;
            const bool riemann = int_riemann || int_both;
            ordered_json j;
            std::optional<Rational> c;
            std::optional<RiemannResult> r;
            if (closed) {
                c = integral_closed_form(spec);
                j["closed_form"] = num(*c);
                j["closed_form_approx"] = c->decimal(12);
            }
            if (riemann) {
                r = integral_riemann(spec, int_depth);
                j["riemann"] = enclosure(r->value);
                j["riemann_width"] = num(r->value.width());
                j["depth"] = int_depth;
            }
            if (c && r) j["discrepancy"] = !r->value.abs().contains(*c);
            return j;
        };
    });

    // salem-eval
    MatrixSource se_matrix;
    std::string se_mode = "plain", se_digits;
    std::optional<std::size_t> se_level;
    auto* sev = verb("salem-eval", "Salem-type function value");
    se_matrix.add_to(sev);
    sev->add_option("--mode", se_mode, "plain | even-swap | odd-swap");
    sev->add_option("--digits", se_digits, "digits of the argument")->required();
    sev->add_option("--level", se_level, "truncate after this level and add the tail bound");
    sev->callback([&] {
        action = [&] {
            const SalemMatrix p = se_matrix.load();
            const SwapMode mode = parse_swap_mode(se_mode);
            const BaseSpec spec = mode == SwapMode::OddSwap ? BaseSpec::constant(p.spec().cap) : p.spec();
            const Representation x = from_text(spec, mode_polarity(mode), se_digits);
            ordered_json j;
            j["mode"] = to_string(mode);
            j["digits"] = format_digits(x);
            if (x.tail != TailKind::Truncated) j["x"] = num(mode_argument(x, mode));
            j["value"] = enclosure(eval_salem(x, p, mode, se_level));
            return j;
        };
    });

    // salem-check
    MatrixSource sc_matrix;
    std::string sc_probe, sc_mode = "plain";
    std::size_t sc_depth = 8;
    auto* sck = verb("salem-check", "matrix conditions and theorem hypotheses");
    sc_matrix.add_to(sck);
    sck->add_option("--probe", sc_probe, "digits of x0 for a difference-quotient probe");
    sck->add_option("--mode", sc_mode, "plain | even-swap | odd-swap (probe only)");
    sck->add_option("--depth", sc_depth, "probe depth");
    sck->callback([&] {
        action = [&] {
            const SalemMatrix p = sc_matrix.load();
            ordered_json j;
            ordered_json violations = ordered_json::array();
            for (const auto& v : validate_matrix(p)) {
                ordered_json e;
                e["condition"] = v.condition;
                e["level"] = v.level;
                if (v.index) e["index"] = *v.index;
                e["message"] = v.message;
                violations.push_back(e);
            }
            j["valid"] = violations.empty();
            j["violations"] = violations;
            if (!violations.empty()) return j;
            const TheoremReport t = theorem_conditions(p);
            ordered_json th;
            th["alternation"] = t.alternation;
            if (t.alternation_failure_level) th["alternation_failure_level"] = *t.alternation_failure_level;
            th["first_column_product"] = to_string(t.first_column);
            th["first_period_product"] = num(t.first_period_product);
            th["last_column_product"] = to_string(t.last_column);
            th["last_period_product"] = num(t.last_period_product);
            th["limits_nonzero"] = t.limits_nonzero;
            th["extra_condition"] = t.extra_condition;
            th["plain_hypotheses"] = t.plain_hypotheses;
            th["swapped_hypotheses"] = t.swapped_hypotheses;
            j["theorem"] = th;
            if (!sc_probe.empty()) {
                const SwapMode mode = parse_swap_mode(sc_mode);
                const BaseSpec spec = mode == SwapMode::OddSwap ? BaseSpec::constant(p.spec().cap) : p.spec();
                const Representation x0 = from_text(spec, mode_polarity(mode), sc_probe);
                ordered_json rows = ordered_json::array();
                for (const auto& s : difference_quotient_probe(p, mode, x0, sc_depth)) {
                    ordered_json r;
                    r["n"] = s.n;
                    r["quotient"] = num(s.quotient);
                    r["approx"] = s.quotient.decimal(12);
                    rows.push_back(r);
                }
                j["probe"] = rows;
            }
            return j;
        };
    });

    // h-map
    ParamsSource hm_params;
    std::string hm_alphas, hm_raw;
    auto* hmap = verb("h-map", "image of a run-structured point under h");
    hm_params.add_to(hmap);
    hmap->add_option("--alphas", hm_alphas, "alphas: \"2,3|2\" (periodic) or \"2,3|...\" (truncated)");
    hmap->add_option("--raw", hm_raw, "raw nega-q digits to parse into runs instead of --alphas");
    hmap->callback([&] {
        action = [&] {
            const FractalParams params = hm_params.load();
            if (hm_alphas.empty() == hm_raw.empty()) throw std::invalid_argument("give exactly one of --alphas, --raw");
            RunDigits x;
            if (!hm_alphas.empty()) {
                x = run_digits_from_text(params, hm_alphas);
            } else {
                const DigitText t = parse_digit_text(hm_raw);
                Representation raw{BaseSpec::constant(params.q), Polarity::NegaConstant, t.digits, t.tail, t.tail_digits};
                validate_representation(raw);
                x = parse_runs(raw, params);
            }
            const Representation raw = expand_runs(x);
            const Representation y = h_forward(x);
            ordered_json j;
            j["alphas"] = run_digits_text(x);
            j["raw_digits"] = format_digits(raw);
            j["x"] = enclosure(decode(raw));
            j["y"] = enclosure(decode(y));
            return j;
        };
    });

    // h-inverse
    ParamsSource hi_params;
    std::string hi_digits;
    auto* hinv = verb("h-inverse", "preimage of a nega-q point under h, by two routes");
    hi_params.add_to(hinv);
    hinv->add_option("--digits", hi_digits, "image digits over {1..q-1} \\ {u}")->required();
    hinv->callback([&] {
        action = [&] {
            const FractalParams params = hi_params.load();
            const DigitText t = parse_digit_text(hi_digits);
            const Representation y{BaseSpec::constant(params.q), Polarity::NegaConstant, t.digits, t.tail,
                                   t.tail_digits};
            const HInverse r = h_inverse(y, params);
            ordered_json j;
            j["alphas"] = run_digits_text(r.x);
            j["raw_digits"] = format_digits(expand_runs(r.x));
            j["x_raw"] = enclosure(r.raw_value);
            j["x_closed"] = enclosure(r.closed_value);
            j["routes_agree"] = r.raw_value == r.closed_value;
            return j;
        };
    });

    // dim
    ParamsSource dim_params;
    bool dim_moran = false, dim_range = false;
    std::string dim_tol = "1e-9";
    auto* dim = verb("dim", "Moran-equation root or log_q |theta|");
    dim_params.add_to(dim);
    dim->add_flag("--moran", dim_moran, "solve sum_{p in theta} q^{-p a} = 1");
    dim->add_flag("--range", dim_range, "log_q |theta|");
    dim->add_option("--tol", dim_tol, "enclosure width");
    dim->callback([&] {
        action = [&] {
            if (dim_moran == dim_range) throw std::invalid_argument("give exactly one of --moran, --range");
            const FractalParams params = dim_params.load();
            const Rational tol = Rational::parse(dim_tol);
            const DimensionResult r = dim_moran ? dim_D(params, tol) : dim_E(params, tol);
            ordered_json j;
            j["method"] = to_string(r.method);
            j["alpha_lo"] = num(r.value.lo);
            j["alpha_hi"] = num(r.value.hi);
            j["approx"] = r.value.midpoint().decimal(12);
            j["width"] = r.value.width().decimal(6);
            if (dim_moran) {
                j["residual_bound"] = r.residual.decimal(6);
                j["t_lo"] = num(r.t->lo);
                j["t_hi"] = num(r.t->hi);
                j["brackets_one"] = moran_brackets_one(params, r);
            }
            return j;
        };
    });

    // count-squares
    ParamsSource cs_params;
    std::size_t cs_m_lo = 1, cs_m_hi = 0;
    auto* csq = verb("count-squares", "rank-m covering rectangles of the graph of h");
    cs_params.add_to(csq);
    csq->add_option("--m", cs_m_lo, "rank (or first rank with --m-hi)");
    csq->add_option("--m-hi", cs_m_hi, "last rank");
    csq->callback([&] {
        action = [&] {
            const FractalParams params = cs_params.load();
            const std::size_t hi = cs_m_hi == 0 ? cs_m_lo : cs_m_hi;
            if (hi < cs_m_lo) throw std::invalid_argument("--m-hi must be >= --m");
            ordered_json rows = ordered_json::array();
            for (std::size_t m = cs_m_lo; m <= hi; ++m) {
                ordered_json r;
                r["m"] = m;
                r["count"] = count_graph_squares(params, m).get_str();
                rows.push_back(r);
            }
            ordered_json j;
            j["q"] = params.q;
            j["u"] = params.u;
            j["tau"] = params.tau();
            j["rows"] = rows;
            return j;
        };
    });

    // boxdim
    ParamsSource bd_params;
    std::size_t bd_lo = 3, bd_hi = 6;
    auto* bdim = verb("boxdim", "grid box-counting slope of the graph of h");
    bd_params.add_to(bdim);
    bdim->add_option("--m-lo", bd_lo, "first grid rank");
    bdim->add_option("--m-hi", bd_hi, "last grid rank");
    bdim->callback([&] {
        action = [&] {
            const FractalParams params = bd_params.load();
            const BoxDimension r = box_dim_estimate(params, bd_lo, bd_hi);
            ordered_json rows = ordered_json::array();
            for (const auto& [m, n] : r.counts) {
                ordered_json row;
                row["m"] = m;
                row["count"] = n.get_str();
                rows.push_back(row);
            }
            ordered_json j;
            j["slope_lo"] = num(r.result.value.lo);
            j["slope_hi"] = num(r.result.value.hi);
            j["approx"] = r.result.value.midpoint().decimal(12);
            j["rows"] = rows;
            return j;
        };
    });

    // graph-data
    std::string gd_target;
    SpecSource gd_spec;
    MatrixSource gd_matrix;
    int gd_q = 0, gd_u = 0;
    std::size_t gd_depth = 2;
    auto* gdata = verb("graph-data", "exact cylinder images for plotting");
    gdata->add_option("--target", gd_target, "f | salem | h")->required()->check(CLI::IsMember({"f", "salem", "h"}));
    gd_spec.add_to(gdata);
    gd_matrix.add_to(gdata);
    gdata->add_option("--q", gd_q, "nega-q base (h)");
    gdata->add_option("--u", gd_u, "excluded digit (h)");
    gdata->add_option("--depth", gd_depth, "cylinder rank");
    gdata->callback([&] {
        action = [&] {
            ordered_json rows = ordered_json::array();
            auto add = [&](const Enclosure& x, const Enclosure& y) {
                ordered_json r;
                r["x_lo"] = num(x.lo);
                r["x_hi"] = num(x.hi);
                r["y_lo"] = num(y.lo);
                r["y_hi"] = num(y.hi);
                rows.push_back(r);
            };
            if (gd_target == "f") {
                for (const auto& c : f_graph_cells(gd_spec.load(), gd_depth)) add(c.x, c.y);
            } else if (gd_target == "salem") {
                for (const auto& c : salem_graph_cells(gd_matrix.load(), gd_depth)) add(c.x, c.y);
            } else {
                FractalParams params{gd_q, gd_u};
                require_valid(params);
                for (const auto& b : h_graph_boxes(params, gd_depth)) add(b.x, b.y);
            }
            ordered_json j;
            j["target"] = gd_target;
            j["depth"] = gd_depth;
            j["rows"] = rows;
            return j;
        };
    });

    std::vector<std::string> argv_storage;
    argv_storage.reserve(args.size() + 1);
    argv_storage.emplace_back("cantor-atlas");
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_storage) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return exit_ok;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return exit_input;
    }

    try {
        const ordered_json doc = action();
        if (format == "csv")
            out << to_csv(doc);
        else
            out << doc.dump(2) << "\n";
        return exit_ok;
    } catch (const resource_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_resource;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return exit_input;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_input;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << "\n";
        return exit_input;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return exit_internal;
    }
}

}  // namespace cantor::cli
