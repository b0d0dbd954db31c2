#include "dcongr/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <functional>
#include <optional>

#include "dcongr/charvar.hpp"
#include "dcongr/expr.hpp"
#include "dcongr/tower.hpp"
#include "dcongr/weierstrass.hpp"
#include "json.hpp"

namespace dcongr::cli {

namespace {

using json = nlohmann::ordered_json;

int exit_code(ErrorClass c) {
    switch (c) {
        case ErrorClass::Parse: return 2;
        case ErrorClass::Precondition: return 3;
        case ErrorClass::Precision: return 4;
        case ErrorClass::Horizon: return 5;
    }
    return 3;
}

const char* class_name(ErrorClass c) {
    switch (c) {
        case ErrorClass::Parse: return "parse";
        case ErrorClass::Precondition: return "precondition";
        case ErrorClass::Precision: return "precision";
        case ErrorClass::Horizon: return "horizon";
    }
    return "precondition";
}

json op_json(const DiffOp& h) {
    json j;
    j["text"] = expr::format(h);
    j["level"] = h.level();
    j["order"] = h.order();
    if (h.is_zero()) {
        j["zero"] = true;
    } else {
        j["log_p_norm"] = -h.min_valuation();
        j["nbar"] = nbar(h);
        j["nk"] = nk(h);
    }
    j["truncated"] = h.truncated();
    return j;
}

json staircase_json(const Staircase& s) {
    json arr = json::array();
    for (const auto& e : s.minimals()) arr.push_back({{"v", e.v}, {"d", e.d}});
    return arr;
}

struct Settings {
    long prime = 5;
    int prec = 40;
    int tdeg = 64;
    int opmax = 64;
    int level = 0;
    bool as_json = false;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"dcongr: p-adic differential operators with congruence level"};
    app.require_subcommand(1);
    app.fallthrough();
    Settings st;
    app.add_option("--prime", st.prime, "prime p")->envname("DCONGR_PRIME");
    app.add_option("--prec", st.prec, "coefficient precision N")->envname("DCONGR_PREC");
    app.add_option("--tdeg", st.tdeg, "t-truncation degree");
    app.add_option("--opmax", st.opmax, "operator order cap");
    app.add_option("--level", st.level, "congruence level k");
    app.add_flag("--json", st.as_json, "JSON output");

    std::function<void(const Ctx&)> action;
    std::vector<std::string> exprs;
    std::string by = "t";
    std::string centre;
    bool ascii = false;
    std::string family;
    long slope = 1;
    int depth = -1;
    int kmax = 6, kmin = 0, mmin = 1, mmax = 3;

    auto need = [&](size_t n, const char* what) {
        if (exprs.size() < n) throw Error(ErrorKind::SyntaxError, std::string("missing ") + what);
    };
    auto op_at = [&](const Ctx& ctx, size_t i) { return expr::parse_operator(exprs[i], ctx, st.level); };
    auto all_ops = [&](const Ctx& ctx, size_t from) {
        std::vector<DiffOp> v;
        for (size_t i = from; i < exprs.size(); ++i) v.push_back(op_at(ctx, i));
        return v;
    };
    auto emit_op = [&](const DiffOp& h) {
        if (st.as_json) out << op_json(h).dump() << "\n";
        else out << expr::format(h) << "\n";
    };

    auto add_simple = [&](const char* name, const char* help, size_t nexpr,
                          std::function<void(const Ctx&)> fn) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("exprs", exprs, "operator expressions")->required();
        sub->callback([&, fn, nexpr, name]() {
            action = [&, fn, nexpr, name](const Ctx& ctx) {
                need(nexpr, name);
                fn(ctx);
            };
        });
        return sub;
    };

    add_simple("norm", "operator norm ||H||_k", 1, [&](const Ctx& ctx) {
        const DiffOp h = op_at(ctx, 0);
        const Magnitude m = op_norm(h);
        if (st.as_json) out << json{{"norm", m.str()}, {"log_p_norm", m.zero ? json(nullptr) : json(m.log_p)}}.dump() << "\n";
        else out << m.str() << " (log_p = " << (m.zero ? std::string("-inf") : std::to_string(m.log_p)) << ")\n";
    });
    add_simple("nbar", "largest index attaining the norm", 1, [&](const Ctx& ctx) {
        const int v = nbar(op_at(ctx, 0));
        if (st.as_json) out << json{{"nbar", v}}.dump() << "\n";
        else out << v << "\n";
    });
    add_simple("nk", "dominant index of the dominant coefficient", 1, [&](const Ctx& ctx) {
        const int v = nk(op_at(ctx, 0));
        if (st.as_json) out << json{{"nk", v}}.dump() << "\n";
        else out << v << "\n";
    });
    add_simple("mul", "product of operators in order", 2, [&](const Ctx& ctx) {
        DiffOp acc = op_at(ctx, 0);
        for (size_t i = 1; i < exprs.size(); ++i) acc = op_mul(acc, op_at(ctx, i));
        emit_op(acc);
    });
    add_simple("div", "division H = QP + R + S", 2, [&](const Ctx& ctx) {
        const DivisionResult r = divide(op_at(ctx, 0), op_at(ctx, 1));
        if (st.as_json) {
            out << json{{"quotient", op_json(r.quotient)}, {"remainder", op_json(r.remainder)},
                        {"tail", op_json(r.tail)}, {"sweeps", r.sweeps}, {"truncated", r.truncated}}
                       .dump()
                << "\n";
        } else {
            out << "Q = " << expr::format(r.quotient) << "\nR = " << expr::format(r.remainder)
                << "\nS = " << expr::format(r.tail) << "\n";
        }
    });
    add_simple("invert", "inverse of an operator with nbar = nk = 0", 1,
               [&](const Ctx& ctx) { emit_op(op_invert(op_at(ctx, 0))); });
    {
        CLI::App* sub = add_simple("bracket", "commutator [H, t] or [H, p^k D]", 1, [&](const Ctx& ctx) {
            const DiffOp h = op_at(ctx, 0);
            if (by == "t") emit_op(bracket_t(h));
            else if (by == "D") emit_op(bracket_del(h));
            else throw Error(ErrorKind::SyntaxError, "--by must be t or D");
        });
        sub->add_option("--by", by, "t or D");
    }
    add_simple("hensel", "factorization H = Q P", 1, [&](const Ctx& ctx) {
        const HenselResult r = hensel_factor(op_at(ctx, 0));
        if (st.as_json) {
            out << json{{"unit", op_json(r.unit)}, {"dominant", op_json(r.dominant)},
                        {"dominant_order", r.dominant.order()}, {"iterations", r.iterations},
                        {"truncated", r.truncated}}
                       .dump()
                << "\n";
        } else {
            out << "dominant order " << r.dominant.order() << "\nP = " << expr::format(r.dominant)
                << "\nQ = " << expr::format(r.unit) << "\n";
        }
    });
    add_simple("witness", "iterated-bracket unit in the two-sided ideal", 1, [&](const Ctx& ctx) {
        const WitnessResult r = simplicity_witness(op_at(ctx, 0));
        if (st.as_json) {
            out << json{{"word", r.word}, {"t_brackets", r.t_brackets}, {"d_brackets", r.d_brackets},
                        {"witness", op_json(r.op)}}
                       .dump()
                << "\n";
        } else {
            out << "word " << (r.word.empty() ? "(empty)" : r.word) << "\n" << expr::format(r.op) << "\n";
        }
    });
    {
        CLI::App* sub = add_simple("basis", "division basis of a left ideal", 1, [&](const Ctx& ctx) {
            const IdealResult r = division_basis(all_ops(ctx, 0), st.level);
            if (ascii) {
                out << r.basis.staircase.ascii();
                return;
            }
            if (st.as_json) {
                json ops = json::array();
                for (const auto& o : r.basis.ops) ops.push_back(op_json(o));
                out << json{{"unit_ideal", r.unit}, {"staircase", staircase_json(r.basis.staircase)},
                            {"basis", ops}}
                           .dump()
                    << "\n";
            } else {
                out << (r.unit ? "unit ideal\n" : "") << "staircase " << r.basis.staircase.str() << "\n";
                for (const auto& o : r.basis.ops) out << "  " << expr::format(o) << "\n";
            }
        });
        sub->add_flag("--ascii", ascii, "staircase picture");
    }
    add_simple("nf", "normal form of H modulo the ideal of the generators", 2, [&](const Ctx& ctx) {
        const IdealResult r = division_basis(all_ops(ctx, 1), st.level);
        const DiffOp nf = normal_form(op_at(ctx, 0), r.basis);
        if (st.as_json) out << json{{"in_ideal", nf.is_zero()}, {"remainder", op_json(nf)}}.dump() << "\n";
        else out << expr::format(nf) << "\n";
    });
    add_simple("charcycle", "characteristic cycle of D/I", 1, [&](const Ctx& ctx) {
        out << char_cycle(ModuleDescriptor::cyclic(all_ops(ctx, 0), st.level)).json() << "\n";
    });
    add_simple("holonomic", "holonomicity and length bound of D/I", 1, [&](const Ctx& ctx) {
        const ModuleDescriptor m = ModuleDescriptor::cyclic(all_ops(ctx, 0), st.level);
        const CharCycle c = char_cycle(m);
        const bool hol = c.kind != CycleKind::FullCotangent;
        if (st.as_json) out << json{{"holonomic", hol}, {"length_bound", hol ? json(c.total()) : json(nullptr)}}.dump() << "\n";
        else out << (hol ? "true" : "false") << "\n";
    });
    add_simple("rank", "connection rank of D/I", 1, [&](const Ctx& ctx) {
        const auto r = connection_rank(ModuleDescriptor::cyclic(all_ops(ctx, 0), st.level));
        if (st.as_json) out << json{{"rank", r ? json(*r) : json("NotAConnection")}}.dump() << "\n";
        else out << (r ? std::to_string(*r) : std::string("NotAConnection")) << "\n";
    });
    {
        CLI::App* sub = app.add_subcommand("tower", "tower report across levels");
        sub->add_option("exprs", exprs, "operator expression (level 0)");
        sub->add_option("--family", family, "product: prod_{n>=1}(1 - p^(slope*n) D)");
        sub->add_option("--slope", slope, "slope of the product family");
        sub->add_option("--depth", depth, "available factors of the product family");
        sub->add_option("--kmax", kmax, "horizon");
        sub->callback([&]() {
            action = [&](const Ctx& ctx) {
                TowerElement e;
                if (!family.empty()) {
                    if (family != "product") throw Error(ErrorKind::SyntaxError, "unknown family");
                    e = TowerElement::product(ctx, slope, depth >= 0 ? std::optional<int>(depth) : std::nullopt);
                } else {
                    need(1, "tower expression");
                    e = TowerElement::finite(expr::parse_operator(exprs[0], ctx, 0));
                }
                const TowerReport r = tower_report(e, kmax);
                out << r.json() << "\n";
                if (!r.stationary)
                    throw Error(ErrorKind::HorizonInconclusive,
                                "multiplicities not stationary by level " + std::to_string(kmax));
            };
        });
    }
    {
        CLI::App* sub = app.add_subcommand("normsuite", "norm table of the product family");
        sub->add_option("--slope", slope, "slope of the product family");
        sub->add_option("--kmin", kmin);
        sub->add_option("--kmax", kmax);
        sub->add_option("--mmin", mmin);
        sub->add_option("--mmax", mmax);
        sub->add_option("--depth", depth, "available factors");
        sub->callback([&]() {
            action = [&](const Ctx& ctx) {
                const TowerElement e =
                    TowerElement::product(ctx, slope, depth >= 0 ? std::optional<int>(depth) : std::nullopt);
                const auto rows = level_norm_suite(e, kmin, kmax, mmin, mmax);
                if (st.as_json) {
                    out << norm_suite_json(rows) << "\n";
                    return;
                }
                for (const auto& r : rows) {
                    out << "k=" << r.k << " log_p||P_k||_k=" << r.log_p_pk;
                    for (const auto& [m, v] : r.diff) out << " m=" << m << ":" << v;
                    out << "\n";
                }
            };
        });
    }
    {
        CLI::App* sub = app.add_subcommand("translate", "recentre t -> t + c");
        sub->add_option("c", centre, "centre in Z_p")->required();
        sub->add_option("exprs", exprs, "operator expression")->required();
        sub->callback([&]() {
            action = [&](const Ctx& ctx) {
                need(1, "expression");
                emit_op(op_at(ctx, 0).translate(expr::parse_rational(centre)));
            };
        });
    }

    auto fail = [&](const char* name, ErrorClass cls, const std::string& msg) {
        out << json{{"error", name}, {"class", class_name(cls)}, {"message", msg}}.dump() << "\n";
        return exit_code(cls);
    };

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return fail("SyntaxError", ErrorClass::Parse, e.what());
    }
    try {
        const Ctx ctx = Context::make(st.prime, st.prec, st.tdeg, st.opmax);
        if (st.level < 0) throw Error(ErrorKind::RangeError, "level must be non-negative");
        if (action) action(ctx);
    } catch (const Error& e) {
        return fail(e.name(), error_class(e.kind()), e.what());
    }
    return 0;
}

}  // namespace dcongr::cli
