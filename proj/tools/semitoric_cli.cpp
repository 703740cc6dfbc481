// Command-line surface for the semitoric-families toolkit: exact polygon
// algebra, fixed-point classification sweeps, figure-data emission, height
// invariants, the blowup/blowdown pipeline, and the acceptance suite.
//
// Exit codes: 0 success, 2 invalid input, 3 infeasible operation,
// 4 numerical failure.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "semitoric/acceptance.hpp"
#include "semitoric/heights.hpp"
#include "semitoric/pipeline.hpp"
#include "semitoric/polygon_json.hpp"
#include "semitoric/spectral.hpp"

namespace st = semitoric;
using st::json;

namespace {

void write_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        if (!content.empty() && content.back() != '\n') std::cout << "\n";
    } else {
        write_atomic(out_path, content);
    }
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::domain_error("cannot read " + path);
    json j;
    in >> j;
    return j;
}

st::RatPoint parse_point(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos)
        throw std::domain_error("point must be given as x,y with rational coordinates");
    return {st::Rat::parse(s.substr(0, comma)), st::Rat::parse(s.substr(comma + 1))};
}

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    if (out.empty()) throw std::domain_error("expected a comma-separated list of numbers");
    return out;
}

struct SystemOptions {
    std::string name;
    double alpha = 1, beta = 1, gamma = 0.2, R1 = 1, R2 = 2, j0 = -1;

    st::SystemFamily build() const {
        using st::SystemFamily;
        if (name == "coupled") return SystemFamily::coupled_angular(R1, R2);
        if (name == "hp-2param") return SystemFamily::hp_2param(R1, R2);
        if (name == "w1-moving") return SystemFamily::w1_moving(alpha, beta, gamma);
        if (name == "w1-switch") return SystemFamily::w1_switch(alpha, beta, gamma);
        if (name == "w1-hyperbolic") return SystemFamily::w1_hyperbolic(alpha, beta, gamma);
        if (name == "w2-trans-b") return SystemFamily::w2_trans_b(alpha, beta, gamma);
        if (name == "w2-trans-c") return SystemFamily::w2_trans_c(alpha, beta, gamma);
        if (name == "w2-2param") return SystemFamily::w2_2param(alpha, beta, gamma);
        if (name == "degen-appearance") return SystemFamily::degen_appearance(j0);
        if (name == "degen-become") return SystemFamily::degen_become(j0);
        if (name == "degen-collapse") return SystemFamily::degen_collapse(R1, R2, j0);
        throw std::domain_error("unknown system '" + name + "'");
    }

    void attach(CLI::App* cmd) {
        cmd->add_option("--system", name, "family id")->required();
        cmd->add_option("--alpha", alpha, "first scaling");
        cmd->add_option("--beta", beta, "second scaling");
        cmd->add_option("--gamma", gamma, "coupling strength");
        cmd->add_option("--R1", R1, "first sphere radius");
        cmd->add_option("--R2", R2, "second sphere radius");
        cmd->add_option("--j0", j0, "distinguished level of the degenerate examples");
    }
};

json verdict_json(const st::WilliamsonVerdict& v) {
    return {{"type", st::to_string(v.type)},
            {"witness_nu_mu", {v.nu, v.mu}},
            {"roots",
             {{v.root1.real(), v.root1.imag()}, {v.root2.real(), v.root2.imag()}}},
            {"margin", v.margin},
            {"odd_residual", v.odd_residual}};
}

int cmd_polygon_validate(const std::string& file) {
    st::MarkedPolygon mp = st::marked_polygon_from_json(load_json(file));
    auto rep = st::validate(mp);
    json out = {{"valid", rep.valid}, {"violations", rep.violations}};
    std::cout << out.dump(2) << "\n";
    return rep.valid ? 0 : 2;
}

std::string csv_region(const st::RegionDiagram& rd) {
    std::ostringstream os;
    os << "s1,s2,typeB,typeC\n";
    for (int i = 0; i < rd.grid; ++i)
        for (int k = 0; k < rd.grid; ++k) {
            auto [b, c] = rd.at(i, k);
            os << static_cast<double>(i) / (rd.grid - 1) << ","
               << static_cast<double>(k) / (rd.grid - 1) << "," << st::to_string(b) << ","
               << st::to_string(c) << "\n";
        }
    return os.str();
}

std::string csv_momentum(const st::MomentumImage& img, double t, double s1, double s2) {
    std::ostringstream os;
    os << "t,s1,s2,J,H,stratum\n";
    os.precision(12);
    for (const auto& s : img.samples)
        os << t << "," << s1 << "," << s2 << "," << s.J << "," << s.H << "," << s.stratum
           << "\n";
    return os.str();
}

std::string csv_envelope(const st::MomentumImage& img) {
    std::ostringstream os;
    os << "J,Hmin,Hmax\n";
    os.precision(12);
    for (const auto& e : img.envelope) os << e.J << "," << e.Hmin << "," << e.Hmax << "\n";
    return os.str();
}

std::string csv_fixed_points(const st::MomentumImage& img) {
    std::ostringstream os;
    os << "J,H\n";
    os.precision(12);
    for (const auto& [J, H] : img.fixed_point_images) os << J << "," << H << "\n";
    return os.str();
}

std::string csv_profile(const st::ReducedHamiltonian& rh, int samples) {
    std::ostringstream os;
    os << "rho,g,h,f,Hred(theta=0),Hred(theta=pi)\n";
    os.precision(12);
    st::PolyD dg = rh.g.deriv();
    for (int k = 1; k < samples; ++k) {
        double rho = rh.rho_max * k / samples;
        double s = rho * rho;
        double g = rh.g.eval(s);
        double h = g > 0 ? (2 * g + rho * 2 * rho * dg.eval(s)) / (2 * std::sqrt(g)) : 0.0;
        double f = st::profile_f(rh.g, s);
        os << rho << "," << g << "," << h << "," << f << "," << st::reduced_value(rh, rho, 0.0)
           << "," << st::reduced_value(rh, rho, M_PI) << "\n";
    }
    return os.str();
}

std::string jsonl_pipeline_log(const st::PipelineResult& result) {
    std::ostringstream os;
    for (const auto& step : result.log) {
        json j = {{"stage", step.stage},
                  {"op", step.op},
                  {"site", step.op == "chop"
                               ? json(st::to_json(step.site_a))
                               : json::array({st::to_json(step.site_a), st::to_json(step.site_b)})},
                  {"lambda", step.lambda.str()},
                  {"polygon_before", st::to_json(step.before)},
                  {"polygon_after", st::to_json(step.after)}};
        os << j.dump() << "\n";
    }
    return os.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"semitoric families: exact polygons, classification, heights"};
    app.require_subcommand(1);

    // ---- polygon ----------------------------------------------------------
    auto* polygon = app.add_subcommand("polygon", "exact marked-polygon algebra");
    polygon->require_subcommand(1);
    std::string poly_file, poly_file_b, vertex_str, edge_str, lambda_str = "1/2";
    std::string flips_str, out_path;
    long shear_k = 0, cut_index = 0;
    int cut_sign = +1;
    std::string shift_str = "0";

    auto* p_validate = polygon->add_subcommand("validate", "check the corner conditions");
    p_validate->add_option("file", poly_file)->required();

    auto* p_classify = polygon->add_subcommand("classify-corner", "corner class at a vertex");
    p_classify->add_option("file", poly_file)->required();
    p_classify->add_option("--vertex", vertex_str)->required();

    auto* p_chop = polygon->add_subcommand("chop", "semitoric corner chop");
    p_chop->add_option("file", poly_file)->required();
    p_chop->add_option("--vertex", vertex_str)->required();
    p_chop->add_option("--lambda", lambda_str);
    p_chop->add_option("-o,--out", out_path);

    auto* p_unchop = polygon->add_subcommand("unchop", "corner unchop at an edge");
    p_unchop->add_option("file", poly_file)->required();
    p_unchop->add_option("--edge", edge_str, "x1,y1:x2,y2")->required();
    p_unchop->add_option("--lambda", lambda_str);
    p_unchop->add_option("-o,--out", out_path);

    auto* p_flip = polygon->add_subcommand("flip", "apply a group element");
    p_flip->add_option("file", poly_file)->required();
    p_flip->add_option("--flips", flips_str, "comma list of +-1 per mark");
    p_flip->add_option("--shear", shear_k, "global shear exponent");
    p_flip->add_option("--shift", shift_str, "vertical shift (rational)");
    p_flip->add_option("-o,--out", out_path);

    auto* p_orbit = polygon->add_subcommand("orbit-equal", "same group orbit?");
    p_orbit->add_option("file_a", poly_file)->required();
    p_orbit->add_option("file_b", poly_file_b)->required();

    auto* p_remove = polygon->add_subcommand("remove-cut", "forget one mark at a cut sign");
    p_remove->add_option("file", poly_file)->required();
    p_remove->add_option("--index", cut_index);
    p_remove->add_option("--sign", cut_sign);
    p_remove->add_option("-o,--out", out_path);

    auto* p_canonical = polygon->add_subcommand("canonical", "canonical orbit representative");
    p_canonical->add_option("file", poly_file)->required();
    p_canonical->add_option("-o,--out", out_path);

    // ---- classify ---------------------------------------------------------
    auto* classify = app.add_subcommand("classify", "fixed-point and rank-one classification");
    SystemOptions cls_sys;
    cls_sys.attach(classify);
    double cls_t = 0.5, cls_s2 = 0.0;
    bool cls_times = false;
    int cls_grid = 0;
    std::string cls_j_list, cls_out;
    classify->add_option("--t,--s1", cls_t, "parameter t (or s1)");
    classify->add_option("--s2", cls_s2, "second parameter");
    classify->add_flag("--transition-times", cls_times, "closed form and bisection oracle");
    classify->add_option("--grid", cls_grid, "emit a region diagram CSV on an NxN grid");
    classify->add_option("--rank-one", cls_j_list, "levels j for the reduced rank-one sweep");
    classify->add_option("-o,--out", cls_out);

    // ---- figures ----------------------------------------------------------
    auto* figures = app.add_subcommand("figures", "CSV bundles for the momentum/profile plots");
    SystemOptions fig_sys;
    fig_sys.attach(figures);
    std::string fig_t_list = "0.5", fig_j_list, fig_dir = ".";
    int fig_resolution = 48;
    bool fig_heights = false;
    double fig_s2 = -1;
    figures->add_option("--t,--s1", fig_t_list, "comma list of parameter values");
    figures->add_option("--s2", fig_s2, "second parameter (two-parameter families)");
    figures->add_option("--reduced", fig_j_list, "emit reduced profiles at these levels j");
    figures->add_flag("--heights", fig_heights, "emit the height comparison curve");
    figures->add_option("--resolution", fig_resolution);
    figures->add_option("--out", fig_dir, "output directory");

    // ---- heights ----------------------------------------------------------
    auto* heights = app.add_subcommand("heights", "height invariants and the comparison");
    double h_alpha = 2, h_beta = 2, h_gamma = 0.35, h_R1 = 1, h_R2 = 2;
    long h_samples = 0;
    long h_seed = 20240901;
    int h_grid = 20;
    bool h_sphere = false, h_compare = false;
    std::string h_out;
    heights->add_option("--alpha", h_alpha);
    heights->add_option("--beta", h_beta);
    heights->add_option("--gamma", h_gamma);
    heights->add_option("--R1", h_R1);
    heights->add_option("--R2", h_R2);
    heights->add_option("--samples", h_samples, "Monte-Carlo oracle samples");
    heights->add_option("--seed", h_seed, "oracle seed");
    heights->add_option("--grid", h_grid, "gamma grid for the comparison");
    heights->add_flag("--sphere", h_sphere, "sphere-pair system instead of the second surface");
    heights->add_flag("--compare", h_compare, "tabulate both systems at matched scalings");
    heights->add_option("-o,--out", h_out);

    // ---- pipeline ---------------------------------------------------------
    auto* pipeline = app.add_subcommand("pipeline", "polygon-level blowup/blowdown pipeline");
    long pipe_n = 1;
    std::string pipe_alpha = "1", pipe_beta = "1", pipe_y = "1/2", pipe_sizes, pipe_log;
    pipeline->add_option("--n", pipe_n, "target surface index")->required();
    pipeline->add_option("--alpha", pipe_alpha, "target first scaling (rational)");
    pipeline->add_option("--beta", pipe_beta, "second scaling (rational)");
    pipeline->add_option("--y", pipe_y, "mark ordinate (rational)");
    pipeline->add_option("--sizes", pipe_sizes, "comma list of rational chop sizes");
    pipeline->add_option("--log", pipe_log, "step log file (JSON lines)");

    // ---- validate-all -----------------------------------------------------
    auto* validate_all = app.add_subcommand("validate-all", "run the acceptance suite");
    bool quick = false;
    validate_all->add_flag("--quick", quick, "reduced sample counts");

    CLI11_PARSE(app, argc, argv);

    try {
        if (p_validate->parsed()) return cmd_polygon_validate(poly_file);
        if (p_classify->parsed()) {
            st::MarkedPolygon mp = st::marked_polygon_from_json(load_json(poly_file));
            auto cls = st::classify_corner(mp, parse_point(vertex_str));
            std::cout << json{{"corner", st::to_string(cls)}}.dump(2) << "\n";
            return 0;
        }
        if (p_chop->parsed()) {
            st::MarkedPolygon mp = st::marked_polygon_from_json(load_json(poly_file));
            auto outcome = st::corner_chop_ex(mp, parse_point(vertex_str),
                                              st::Rat::parse(lambda_str));
            json j = st::to_json(outcome.result);
            j["new_edge"] = json::array(
                {st::to_json(outcome.edge_a), st::to_json(outcome.edge_b)});
            emit(out_path, j.dump(2));
            return 0;
        }
        if (p_unchop->parsed()) {
            auto colon = edge_str.find(':');
            if (colon == std::string::npos)
                throw std::domain_error("edge must be given as x1,y1:x2,y2");
            st::MarkedPolygon mp = st::marked_polygon_from_json(load_json(poly_file));
            auto result = st::corner_unchop(mp, parse_point(edge_str.substr(0, colon)),
                                            parse_point(edge_str.substr(colon + 1)),
                                            st::Rat::parse(lambda_str));
            emit(out_path, st::to_json(result).dump(2));
            return 0;
        }
        if (p_flip->parsed()) {
            st::MarkedPolygon mp = st::marked_polygon_from_json(load_json(poly_file));
            st::GroupElement g = st::GroupElement::identity(mp.mark_count());
            if (!flips_str.empty()) {
                g.flips.clear();
                std::stringstream ss(flips_str);
                std::string tok;
                while (std::getline(ss, tok, ',')) g.flips.push_back(std::stoi(tok));
            }
            g.shear_exponent = shear_k;
            g.vertical_shift = st::Rat::parse(shift_str);
            emit(out_path, st::to_json(st::apply_group(g, mp)).dump(2));
            return 0;
        }
        if (p_orbit->parsed()) {
            st::MarkedPolygon a = st::marked_polygon_from_json(load_json(poly_file));
            st::MarkedPolygon b = st::marked_polygon_from_json(load_json(poly_file_b));
            bool eq = st::orbit_equal(a, b);
            std::cout << (eq ? "true" : "false") << "\n";
            return 0;
        }
        if (p_remove->parsed()) {
            st::MarkedPolygon mp = st::marked_polygon_from_json(load_json(poly_file));
            emit(out_path,
                 st::to_json(st::remove_cut(mp, static_cast<std::size_t>(cut_index), cut_sign))
                     .dump(2));
            return 0;
        }
        if (p_canonical->parsed()) {
            st::MarkedPolygon mp = st::marked_polygon_from_json(load_json(poly_file));
            emit(out_path, st::to_json(st::canonical_form(mp)).dump(2));
            return 0;
        }

        if (classify->parsed()) {
            st::SystemFamily sys = cls_sys.build();
            st::ParamValue pv{cls_t, cls_s2};
            json out;
            if (cls_times) {
                st::TransitionTimes tt = st::transition_times(sys);
                out["transition_times"] = {{"closed", {tt.closed_minus, tt.closed_plus}},
                                           {"bisection", {tt.bisect_minus, tt.bisect_plus}},
                                           {"gap", tt.gap()}};
            }
            if (cls_grid > 1) {
                st::RegionDiagram rd = st::region_diagram(sys, cls_grid);
                std::string path = cls_out.empty() ? "region_diagram.csv" : cls_out;
                write_atomic(path, csv_region(rd));
                out["region_csv"] = path;
                std::cout << out.dump(2) << "\n";
                return 0;
            }
            auto specials = st::special_combos(sys);
            json points = json::array();
            auto inv = st::fixed_points(sys, pv);
            for (const auto& e : inv.points) {
                auto hb = st::hessian_bundle(sys, pv, e.point);
                auto v = st::classify_fixed_point(hb, specials);
                json pj = verdict_json(v);
                pj["point"] = e.label;
                pj["J"] = e.J;
                pj["H"] = e.H;
                pj["t"] = pv.t;
                pj["grad_residual"] = e.grad_residual;
                points.push_back(pj);
            }
            out["fixed_points"] = points;
            for (const auto& [level, res] : inv.degenerate_levels)
                out["degenerate_levels"].push_back({{"J", level}, {"max_residual", res}});
            for (const auto& n : inv.notes) out["notes"].push_back(n);
            if (!cls_j_list.empty()) {
                json sweep = json::array();
                for (double j : parse_double_list(cls_j_list)) {
                    auto rh = st::reduced_hamiltonian(sys, pv, j);
                    for (const auto& cp : st::reduced_critical_points(rh)) {
                        sweep.push_back({{"j", j},
                                         {"rho", cp.rho},
                                         {"theta", cp.theta},
                                         {"type", st::to_string(st::classify_rank_one(cp))},
                                         {"first_order_residual", cp.first_order_residual}});
                    }
                }
                out["rank_one"] = sweep;
            }
            emit(cls_out, out.dump(2));
            return 0;
        }

        if (figures->parsed()) {
            st::SystemFamily sys = fig_sys.build();
            std::filesystem::create_directories(fig_dir);
            auto path = [&](const std::string& stem) { return fig_dir + "/" + stem; };
            if (fig_heights) {
                auto cmp = st::match_and_compare(fig_sys.R1, fig_sys.R2, 20);
                std::ostringstream os;
                os << "gamma,h1_w2,h1_s2,err_quad,err_mc\n";
                os.precision(12);
                for (const auto& r : cmp.rows)
                    os << r.gamma << "," << r.h1_w2 << "," << r.h1_s2 << "," << r.err_quad
                       << "," << r.err_mc << "\n";
                write_atomic(path("heights_comparison.csv"), os.str());
                std::cout << json{{"crossing_found", cmp.crossing_found},
                                  {"gamma_star", cmp.crossing_found ? cmp.gamma_star : 0.0}}
                                 .dump(2)
                          << "\n";
                return 0;
            }
            if (!fig_j_list.empty()) {
                for (double j : parse_double_list(fig_j_list)) {
                    st::ParamValue pv{parse_double_list(fig_t_list)[0],
                                      fig_s2 < 0 ? 0.0 : fig_s2};
                    auto rh = st::reduced_hamiltonian(sys, pv, j);
                    std::ostringstream stem;
                    stem << "reduced_" << st::to_string(sys.id) << "_j" << j << ".csv";
                    write_atomic(path(stem.str()), csv_profile(rh, 512));
                }
                return 0;
            }
            for (double t : parse_double_list(fig_t_list)) {
                st::ParamValue pv{t, fig_s2 < 0 ? 0.0 : fig_s2};
                st::MomentumImage img = st::momentum_image(sys, pv, fig_resolution);
                std::ostringstream stem;
                stem << "momentum_" << st::to_string(sys.id) << "_t" << t;
                if (fig_s2 >= 0) stem << "_s2_" << fig_s2;
                write_atomic(path(stem.str() + ".csv"),
                             csv_momentum(img, t, t, fig_s2 < 0 ? 0.0 : fig_s2));
                write_atomic(path(stem.str() + "_envelope.csv"), csv_envelope(img));
                write_atomic(path(stem.str() + "_fixed_points.csv"), csv_fixed_points(img));
            }
            return 0;
        }

        if (heights->parsed()) {
            if (h_compare) {
                auto cmp = st::match_and_compare(h_R1, h_R2, h_grid, h_samples,
                                                 static_cast<std::uint64_t>(h_seed));
                std::ostringstream os;
                os << "gamma,h1_w2,h1_s2,err_quad,err_mc\n";
                os.precision(12);
                for (const auto& r : cmp.rows)
                    os << r.gamma << "," << r.h1_w2 << "," << r.h1_s2 << "," << r.err_quad
                       << "," << r.err_mc << "\n";
                emit(h_out, os.str());
                std::cerr << json{{"monotone_decreasing", cmp.monotone_decreasing},
                                  {"crossing_found", cmp.crossing_found},
                                  {"gamma_star", cmp.crossing_found ? cmp.gamma_star : 0.0}}
                                 .dump(2)
                          << "\n";
                return 0;
            }
            st::HeightResult h =
                h_sphere
                    ? st::height_s2xs2(h_R1, h_R2, h_samples,
                                       static_cast<std::uint64_t>(h_seed))
                    : st::height_w2(h_alpha, h_beta, h_gamma, h_samples,
                                    static_cast<std::uint64_t>(h_seed));
            json out = {{"h1", h.h1},
                        {"h2", h.h2},
                        {"fiber_height", h.fiber_height},
                        {"quad_error", h.quad_error}};
            if (h.oracle_samples > 0) {
                out["oracle_h1"] = h.oracle_h1;
                out["oracle_stderr"] = h.oracle_stderr;
                out["oracle_samples"] = h.oracle_samples;
            }
            emit(h_out, out.dump(2));
            return 0;
        }

        if (pipeline->parsed()) {
            st::Rat alpha = st::Rat::parse(pipe_alpha);
            st::Rat beta = st::Rat::parse(pipe_beta);
            st::Rat y = st::Rat::parse(pipe_y);
            std::vector<st::Rat> sizes;
            if (pipe_sizes.empty()) {
                sizes = st::default_schedule(pipe_n, alpha, beta);
            } else {
                std::stringstream ss(pipe_sizes);
                std::string tok;
                while (std::getline(ss, tok, ',')) sizes.push_back(st::Rat::parse(tok));
            }
            auto result = st::run_pipeline(pipe_n, alpha, beta, sizes, y);
            if (!pipe_log.empty()) write_atomic(pipe_log, jsonl_pipeline_log(result));
            auto target = st::standard_triple(pipe_n, alpha, beta, y);
            json out = {
                {"stages", pipe_n},
                {"triple",
                 {{"below", st::to_json(result.triple.below)},
                  {"between", st::to_json(result.triple.between)},
                  {"above", st::to_json(result.triple.above)}}},
                {"orbit_equal_to_standard",
                 st::orbit_equal(result.triple.below, target.below) &&
                     st::orbit_equal(result.triple.between, target.between) &&
                     st::orbit_equal(result.triple.above, target.above)},
                {"transition_times",
                 {{"start", {result.t_minus_start, result.t_plus_start}},
                  {"target", {result.t_minus_target, result.t_plus_target}}}}};
            std::cout << out.dump(2) << "\n";
            return 0;
        }

        if (validate_all->parsed()) {
            st::AcceptanceConfig cfg =
                quick ? st::quick_config() : st::AcceptanceConfig{};
            std::vector<st::CriterionResult> results;
            if (quick) {
                // fast subset: the exact and closed-form criteria
                results.push_back(st::criterion_w1_transition(cfg));
                results.push_back(st::criterion_w1_switch(cfg));
                results.push_back(st::criterion_coupled(cfg));
                results.push_back(st::criterion_evenness(cfg));
                results.push_back(st::criterion_polygon_algebra(cfg));
                results.push_back(st::criterion_pipeline(cfg));
            } else {
                results = st::run_acceptance(cfg);
            }
            bool all = true;
            std::string first_fail;
            for (const auto& r : results) {
                std::printf("%s criterion %d (%.2fs): %s%s%s\n", r.pass ? "PASS" : "FAIL",
                            r.number, r.seconds, r.name.c_str(),
                            r.detail.empty() ? "" : " -- ", r.detail.c_str());
                if (!r.pass && all) {
                    all = false;
                    first_fail = "criterion " + std::to_string(r.number) + " (" + r.name + ")";
                }
            }
            if (!all) {
                std::fprintf(stderr, "first failing: %s\n", first_fail.c_str());
                return 1;
            }
            return 0;
        }
    } catch (const st::infeasible_error& e) {
        std::cerr << json{{"error", e.what()}, {"kind", "infeasible"}}.dump() << "\n";
        return 3;
    } catch (const st::inadmissible_error& e) {
        std::cerr << json{{"error", e.what()}, {"kind", "inadmissible"}}.dump() << "\n";
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << json{{"error", e.what()}, {"kind", "input"}}.dump() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << json{{"error", e.what()}, {"kind", "input"}}.dump() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << json{{"error", e.what()}, {"kind", "input"}}.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", e.what()}, {"kind", "numerical"}}.dump() << "\n";
        return 4;
    }
    return 0;
}
