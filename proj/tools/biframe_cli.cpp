// Command-line surface over the biframe library: classify systems from
// JSON files, reproduce the stock diagonal examples, run constructions and
// reconstruction, and generate seeded random systems.
//
// Exit codes: 0 success, 2 mathematical rejection (a checked property is
// false), 3 input error, 4 numerical breakdown.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "biframe/biframe.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRejected = 2;
constexpr int kExitInput = 3;
constexpr int kExitNumerical = 4;

using biframe::Json;

struct Output {
    bool as_json = false;
    Json json = Json::object();
    std::ostringstream text;

    void emit(int exit_code) {
        if (as_json) {
            json["exit_code"] = exit_code;
            std::cout << json.dump(2) << "\n";
        } else {
            std::cout << text.str();
        }
    }
};

biframe::ToleranceConfig resolve_tolerances(const std::optional<biframe::ToleranceConfig>& file_tol) {
    biframe::ToleranceConfig tol;
    if (file_tol) tol = *file_tol;
    if (const char* env = std::getenv("BIFRAME_TOL")) {
        char* end = nullptr;
        const double value = std::strtod(env, &end);
        if (end == env || *end != '\0')
            throw biframe::SchemaError("", std::string("BIFRAME_TOL is not a number: ") + env);
        tol.eq_tol = value;
    }
    tol.validate();
    return tol;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

void print_report_text(Output& out, const biframe::ClassificationReport& report) {
    out.text << "  bessel:           " << yes_no(report.is_bessel) << "\n";
    out.text << "  frame (xi alone): " << yes_no(report.is_frame) << "\n";
    out.text << "  pair frame:       " << yes_no(report.is_pair_frame) << "\n";
    out.text << "  biframe:          " << yes_no(report.is_biframe) << "\n";
    out.text << "  hermitian defect: " << report.hermitian_defect << "\n";
    if (report.bounds)
        out.text << "  bounds:           [" << report.bounds->lower << ", "
                 << report.bounds->upper << "]\n";
    if (report.is_tight)
        out.text << "  tight constant:   " << *report.is_tight << "\n";
    out.text << "  parseval:         " << yes_no(report.is_parseval) << "\n";
    for (const auto& line : report.diagnostics) out.text << "  note: " << line << "\n";
}

int cmd_analyze(const std::string& path, Output& out) {
    const biframe::SystemFile sys = biframe::parse_system(path);
    const biframe::ToleranceConfig tol = resolve_tolerances(sys.tolerances);
    const biframe::BiframePair pair = sys.pair();
    const biframe::ClassificationReport report = biframe::biframe_check(pair, tol);

    out.json["command"] = "analyze";
    out.json["file"] = path;
    out.json["report"] = biframe::report_to_json(report);
    out.text << "analyze " << path << ": d=" << sys.space.d << " m=" << sys.space.m << ", "
             << pair.size() << " element pair" << (sys.upsilon ? "" : " (upsilon = xi)") << "\n";
    print_report_text(out, report);
    return report.is_bessel ? kExitOk : kExitRejected;
}

int demo_pair_frame_example(Output& out) {
    using namespace biframe;
    const ModuleSpace space{1, 2};
    auto vec = [&](double a, double b) {
        Matrix mat(1, 2);
        mat << Complex(a, 0), Complex(b, 0);
        return ModuleElement(space, mat);
    };
    const BiframePair pair(FrameFamily({vec(1, 2), vec(3, 4)}),
                           FrameFamily({vec(1, 1), vec(1, -1)}));
    const Matrix big = biframe_operator(pair).big();
    const double det = std::abs(Complex(big.determinant()));
    const ClassificationReport report = biframe_check(pair, resolve_tolerances(std::nullopt));

    // the mixed quadratic form vanishes here, so no positive lower bound exists
    const double wx = (-1.0 + std::sqrt(3.0)) / 2.0;
    const double wy = 1.0;
    const ModuleElement witness = vec(wx, wy);
    const Complex form_value = (witness.mat() * big * witness.mat().adjoint())(0, 0);

    out.json["command"] = "demo";
    out.json["example"] = "ex34";
    out.json["mixed_operator"] = matrix_to_json(big);
    out.json["determinant"] = det;
    out.json["report"] = report_to_json(report);
    out.json["witness"] = Json{{"x", wx}, {"y", wy}, {"form_value", form_value.real()}};

    out.text << "example ex34: pair {(1,2),(3,4)} against {(1,1),(1,-1)} on the scalar module\n";
    out.text << "  mixed operator (right action): " << matrix_to_json(big).dump() << "\n";
    out.text << "  |det| = " << det << "  -> invertible, so the pair is a pair frame\n";
    print_report_text(out, report);
    out.text << "  witness: form at x=" << wx << ", y=" << wy << " evaluates to "
             << form_value.real() << " -> no positive lower bound\n";
    return kExitOk;
}

int cmd_demo(const std::string& example, const std::vector<int>& truncs, Output& out) {
    using namespace biframe;
    if (example == "ex34") return demo_pair_frame_example(out);

    ExampleId id;
    std::vector<int> lengths = truncs;
    if (example == "ex32") {
        id = ExampleId::ex32;
        if (lengths.empty()) lengths = {2, 10, 100};
    } else if (example == "ex44") {
        id = ExampleId::ex44;
        if (lengths.empty()) lengths = {3, 30, 300};
    } else if (example == "ex45") {
        id = ExampleId::ex45;
        if (lengths.empty()) lengths = {2, 20, 200};
    } else {
        throw SchemaError("", "unknown example id: " + example);
    }

    const DiagonalExampleSpec spec = example_spec(id);
    for (int n : lengths) validate_truncation_length(spec, n);
    const ToleranceConfig tol = resolve_tolerances(std::nullopt);
    const TruncationReport report = bound_trajectory(spec, lengths, tol);
    const bool with_witness = (id == ExampleId::ex32 || id == ExampleId::ex45);

    out.json["command"] = "demo";
    out.json["example"] = example;
    Json entries = Json::array();

    out.text << "example " << example << ": " << spec.description << "\n";
    out.text << "        N        lower        upper     parseval_defect";
    if (with_witness) out.text << "     xi_bessel  upsilon_bessel";
    out.text << "\n";
    for (const auto& entry : report.entries) {
        Json je{{"n", entry.n},
                {"lower", entry.lower},
                {"upper", entry.upper},
                {"parseval_defect", entry.parseval_defect}};
        char line[160];
        std::snprintf(line, sizeof(line), "  %7d  %11.9g  %11.9g  %18.9g", entry.n, entry.lower,
                      entry.upper, entry.parseval_defect);
        out.text << line;
        if (with_witness) {
            const auto [xi_upper, ups_upper] = non_bessel_witness(spec, entry.n);
            std::snprintf(line, sizeof(line), "  %12.6g  %14.6g", xi_upper, ups_upper);
            out.text << line;
            je["xi_bessel_bound"] = xi_upper;
            je["upsilon_bessel_bound"] = ups_upper;
        }
        out.text << "\n";
        entries.push_back(std::move(je));
    }
    out.json["entries"] = std::move(entries);
    out.json["limit_lower"] = report.limit_lower ? Json(*report.limit_lower) : Json(nullptr);
    out.json["limit_upper"] = report.limit_upper ? Json(*report.limit_upper) : Json(nullptr);
    out.text << "    limit  " << *report.limit_lower << "            " << *report.limit_upper
             << "            (bounds of the untruncated example)\n";
    return kExitOk;
}

biframe::ModuleOperator named_operator(const biframe::SystemFile& sys, const std::string& name,
                                       bool required) {
    const auto it = sys.operators.find(name);
    if (it != sys.operators.end()) return it->second;
    if (required)
        throw biframe::SchemaError("/operators/" + name, "missing required operator");
    return biframe::identity_operator(sys.space);
}

int cmd_construct(const std::string& kind, const std::string& path, double p, double q, double r,
                  double s, const std::string& out_path, Output& out) {
    using namespace biframe;
    const SystemFile sys = parse_system(path);
    const ToleranceConfig tol = resolve_tolerances(sys.tolerances);
    out.json["command"] = "construct";
    out.json["kind"] = kind;
    Json residuals = Json::object();
    int exit_code = kExitOk;

    if (kind == "parseval") {
        ParsevalTransformInput inp{sys.pair(), named_operator(sys, "P", false),
                                   named_operator(sys, "T", false), p, q};
        const BiframePair result = parseval_transform(inp, tol);
        const Matrix g = biframe_operator(result).big();
        const double defect =
            detail::op_norm(g - Matrix::Identity(g.rows(), g.cols()));
        residuals["parseval_defect"] = defect;
        out.text << "construct parseval: defect " << defect << "\n";
        if (!out_path.empty()) {
            SystemFile result_sys;
            result_sys.space = sys.space;
            result_sys.xi = result.xi.elements();
            result_sys.upsilon = result.upsilon.elements();
            write_system(result_sys, out_path);
            out.text << "  wrote transformed pair to " << out_path << "\n";
        }
    } else if (kind == "factorize") {
        FactorizationInput inp{named_operator(sys, "T1", true), named_operator(sys, "T2", true),
                               named_operator(sys, "P", false), named_operator(sys, "Q", false),
                               p, q, r, s};
        const auto [s_op, u_op] = factorize_operators(inp, tol);
        const ModuleOperator recovered = compose(compose(u_op, inp.t1), adjoint_op(s_op));
        const double residual = detail::op_norm(recovered.big() - inp.t2.big());
        residuals["factorization_residual"] = residual;
        out.text << "construct factorize: residual " << residual << "\n";
        out.json["s_op"] = operator_to_json(s_op);
        out.json["u_op"] = operator_to_json(u_op);
        if (!out_path.empty()) {
            SystemFile result_sys = sys;
            result_sys.operators.emplace("S", s_op);
            result_sys.operators.emplace("U", u_op);
            write_system(result_sys, out_path);
            out.text << "  wrote factors S, U to " << out_path << "\n";
        }
    } else if (kind == "dual") {
        const FrameFamily xi = sys.xi_family();
        const FrameFamily dual = canonical_dual(xi, tol);
        const Matrix swapped = biframe_operator(dual, xi).big();
        const double defect = detail::op_norm(
            swapped - Matrix::Identity(swapped.rows(), swapped.cols()));
        residuals["dual_pair_defect"] = defect;
        out.text << "construct dual: canonical dual of " << xi.size()
                 << " elements, dual-pair defect " << defect << "\n";
        Json dual_json = Json::array();
        for (const auto& e : dual.elements()) dual_json.push_back(element_to_json(e));
        out.json["dual"] = std::move(dual_json);
        if (!out_path.empty()) {
            SystemFile result_sys;
            result_sys.space = sys.space;
            result_sys.xi = sys.xi;
            result_sys.upsilon = dual.elements();
            write_system(result_sys, out_path);
            out.text << "  wrote dual pair to " << out_path << "\n";
        }
    } else if (kind == "riesz-check") {
        const BiframePair pair = sys.pair();
        const bool xi_riesz = is_riesz_basis(pair.xi, tol);
        const bool upsilon_riesz = is_riesz_basis(pair.upsilon, tol);
        out.json["xi_riesz"] = xi_riesz;
        out.json["upsilon_riesz"] = upsilon_riesz;
        out.text << "construct riesz-check: xi " << yes_no(xi_riesz) << ", upsilon "
                 << yes_no(upsilon_riesz) << "\n";
        if (xi_riesz && biframe_check(pair, tol).is_biframe) {
            const ModuleOperator companion = riesz_companion(pair, tol);
            double worst = 0.0;
            for (int j = 0; j < pair.space().m; ++j) {
                const ModuleElement image =
                    apply(companion, standard_basis_element(pair.space(), j));
                worst = std::max(worst, module_norm(image - pair.upsilon[j]));
            }
            residuals["companion_residual"] = worst;
            out.text << "  companion operator maps the basis onto upsilon, residual " << worst
                     << "\n";
            if (!out_path.empty()) {
                SystemFile result_sys = sys;
                result_sys.operators.emplace("U", companion);
                write_system(result_sys, out_path);
                out.text << "  wrote companion operator to " << out_path << "\n";
            }
        }
        if (!xi_riesz) exit_code = kExitRejected;
    } else {
        throw SchemaError("", "unknown construct kind: " + kind);
    }
    out.json["residuals"] = std::move(residuals);
    return exit_code;
}

int cmd_reconstruct(const std::string& path, const std::string& vector_arg,
                    const std::string& side, Output& out) {
    using namespace biframe;
    const SystemFile sys = parse_system(path);
    const ToleranceConfig tol = resolve_tolerances(sys.tolerances);
    const BiframePair pair = sys.pair();
    if (!biframe_check(pair, tol).is_biframe) {
        out.json["command"] = "reconstruct";
        out.json["error"] = "not a biframe";
        out.text << "reconstruct: the system is not a biframe\n";
        std::cerr << "reconstruct: not a biframe\n";
        return kExitRejected;
    }

    Json vector_json;
    const size_t first = vector_arg.find_first_not_of(" \t\n");
    if (first != std::string::npos && vector_arg[first] == '{') {
        try {
            vector_json = Json::parse(vector_arg);
        } catch (const Json::parse_error& e) {
            throw SchemaError("", std::string("inline vector is invalid JSON: ") + e.what());
        }
    } else {
        std::ifstream in(vector_arg);
        if (!in) throw SchemaError("", "cannot open vector file: " + vector_arg);
        try {
            in >> vector_json;
        } catch (const Json::parse_error& e) {
            throw SchemaError("", std::string("vector file is invalid JSON: ") + e.what());
        }
    }
    const ModuleElement x = element_from_json(vector_json, "/vector");
    if (!(x.space() == sys.space))
        throw SchemaError("/vector", "vector space disagrees with the system");

    out.json["command"] = "reconstruct";
    out.json["side"] = side;
    Json residuals = Json::object();
    const double denom = module_norm(x) > 0 ? module_norm(x) : 1.0;
    double worst = 0.0;
    auto run_side = [&](ReconstructionSide which, const char* label) {
        const ModuleElement rec = reconstruct(x, pair, which, tol);
        const double rel = module_norm(rec - x) / denom;
        worst = std::max(worst, rel);
        residuals[std::string(label) + "_relative_error"] = rel;
        out.json[std::string(label) + "_reconstruction"] = element_to_json(rec);
        out.text << "  " << label << " reconstruction relative error: " << rel << "\n";
    };
    out.text << "reconstruct " << path << " (side " << side << ")\n";
    if (side == "left" || side == "both") run_side(ReconstructionSide::left, "left");
    if (side == "right" || side == "both") run_side(ReconstructionSide::right, "right");
    out.json["residuals"] = std::move(residuals);
    return worst <= 10.0 * tol.eq_tol ? kExitOk : kExitNumerical;
}

int cmd_random(int d, int m, int count, std::uint64_t seed, const std::string& kind,
               const std::string& out_path, Output& out) {
    using namespace biframe;
    if (d < 1 || m < 1) throw SchemaError("", "dimensions must be positive");
    if (count < m)
        throw SchemaError("", "count must be at least m for " + kind + " generation");
    const ModuleSpace space{d, m};
    const ToleranceConfig tol = resolve_tolerances(std::nullopt);
    SeededRng rng(seed);

    SystemFile sys;
    sys.space = space;
    std::string summary;
    if (kind == "frame") {
        const FrameFamily family = random_frame(rng, space, count);
        sys.xi = family.elements();
        const auto bounds = frame_bounds(family, tol);
        if (!bounds) throw NumericalBreakdown("generated family failed the frame check");
        summary = "frame with bounds [" + detail::fmt_real(bounds->lower) + ", " +
                  detail::fmt_real(bounds->upper) + "]";
    } else if (kind == "biframe" || kind == "parseval") {
        const BiframePair pair = kind == "biframe" ? random_biframe(rng, space, count, tol)
                                                   : random_parseval_pair(rng, space, count, tol);
        sys.xi = pair.xi.elements();
        sys.upsilon = pair.upsilon.elements();
        const ClassificationReport report = biframe_check(pair, tol);
        if (!report.is_biframe)
            throw NumericalBreakdown("generated pair failed the biframe check");
        if (kind == "parseval" && !report.is_parseval)
            throw NumericalBreakdown("generated pair failed the parseval check");
        summary = kind + " pair with bounds [" + detail::fmt_real(report.bounds->lower) + ", " +
                  detail::fmt_real(report.bounds->upper) + "]";
    } else {
        throw SchemaError("", "unknown random kind: " + kind);
    }

    write_system(sys, out_path);
    out.json["command"] = "random";
    out.json["kind"] = kind;
    out.json["seed"] = seed;
    out.json["out"] = out_path;
    out.text << "random: wrote " << summary << " to " << out_path << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"biframe: finite frame and biframe systems over matrix algebras"};
    app.require_subcommand(1);

    std::string file, vector_arg, side = "both", out_path, kind, example, truncs_arg;
    double p = 0.5, q = 0.5, r = 0.5, s = 0.5;
    int d = 1, m = 2, count = 2;
    std::uint64_t seed = 0;
    bool as_json = false;

    auto* analyze = app.add_subcommand("analyze", "classify a frame system file");
    analyze->add_option("file", file)->required();
    analyze->add_flag("--json", as_json, "emit a JSON report");

    auto* demo = app.add_subcommand("demo", "reproduce a stock example");
    demo->add_option("example", example, "one of ex32, ex34, ex44, ex45")->required();
    demo->add_option("--trunc", truncs_arg, "comma-separated truncation lengths");
    demo->add_flag("--json", as_json, "emit a JSON report");

    auto* construct = app.add_subcommand("construct", "run a construction on a system file");
    construct->add_option("kind", kind, "parseval | factorize | dual | riesz-check")->required();
    construct->add_option("file", file)->required();
    construct->add_option("--p", p, "first exponent");
    construct->add_option("--q", q, "second exponent");
    construct->add_option("--r", r, "third exponent (factorize)");
    construct->add_option("--s", s, "fourth exponent (factorize)");
    construct->add_option("--out", out_path, "output file");
    construct->add_flag("--json", as_json, "emit a JSON report");

    auto* reconstruct = app.add_subcommand("reconstruct", "resynthesize a vector from a biframe");
    reconstruct->add_option("file", file)->required();
    reconstruct->add_option("--vector", vector_arg, "element file or inline JSON")->required();
    reconstruct->add_option("--side", side)->check(CLI::IsMember({"left", "right", "both"}));
    reconstruct->add_flag("--json", as_json, "emit a JSON report");

    auto* random = app.add_subcommand("random", "generate a seeded random system");
    random->add_option("--d", d, "algebra dimension")->required();
    random->add_option("--m", m, "module rank")->required();
    random->add_option("--count", count, "number of elements")->required();
    random->add_option("--seed", seed, "rng seed")->required();
    random->add_option("--kind", kind, "frame | biframe | parseval")->required();
    random->add_option("--out", out_path, "output file")->required();
    random->add_flag("--json", as_json, "emit a JSON report");

    CLI11_PARSE(app, argc, argv);

    Output out;
    int exit_code = kExitOk;
    try {
        out.as_json = as_json;
        if (analyze->parsed()) {
            exit_code = cmd_analyze(file, out);
        } else if (demo->parsed()) {
            std::vector<int> truncs;
            if (!truncs_arg.empty()) {
                std::stringstream ss(truncs_arg);
                std::string tok;
                while (std::getline(ss, tok, ',')) {
                    try {
                        truncs.push_back(std::stoi(tok));
                    } catch (const std::exception&) {
                        throw biframe::SchemaError("", "invalid truncation length: " + tok);
                    }
                }
            }
            exit_code = cmd_demo(example, truncs, out);
        } else if (construct->parsed()) {
            exit_code = cmd_construct(kind, file, p, q, r, s, out_path, out);
        } else if (reconstruct->parsed()) {
            exit_code = cmd_reconstruct(file, vector_arg, side, out);
        } else if (random->parsed()) {
            exit_code = cmd_random(d, m, count, seed, kind, out_path, out);
        }
    } catch (const biframe::SchemaError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const biframe::PreconditionFailed& e) {
        std::cerr << "rejected: " << e.what() << "\n";
        return kExitRejected;
    } catch (const biframe::NumericalBreakdown& e) {
        std::cerr << "numerical breakdown: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    }
    out.emit(exit_code);
    return exit_code;
}
