// SPDX-License-Identifier: Apache-2.0
//
// uavrank: site-specific coverage and MIMO channel-rank analysis for UAV links
// Copyright (C) 2026 The uavrank authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "commands.hpp"

#include <algorithm>
#include <map>
#include <ostream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "uavrank/artifacts.hpp"
#include "uavrank/channel.hpp"
#include "uavrank/correlation.hpp"
#include "uavrank/covermap.hpp"
#include "uavrank/error.hpp"
#include "uavrank/eval.hpp"
#include "uavrank/raytrace.hpp"
#include "uavrank/scene.hpp"
#include "uavrank/synth.hpp"

namespace uavrank::cli
{
    using nlohmann::ordered_json;

    namespace
    {
        Scene require_scene(const RunConfig &cfg)
        {
            if (cfg.scene.empty())
                throw InputError(fmt::format("{}: --scene is required", cfg.command));
            return load_scene_file(cfg.scene);
        }

        std::vector<double> altitudes_for(const RunConfig &cfg, const Scene &s)
        {
            const auto &alts = cfg.altitudes.empty() ? s.altitudes_m : cfg.altitudes;
            for (double a : alts)
                if (!(a > 0.0))
                    throw InputError(fmt::format("--altitudes: {} is not > 0", a));
            return alts;
        }

        void check_thresholds(const RunConfig &cfg)
        {
            if (cfg.thresholds.empty())
                throw InputError("--thresholds: at least one value required");
            for (double K : cfg.thresholds)
                if (!(K > 1.0))
                    throw InputError(fmt::format("--thresholds: {} is not > 1", K));
        }

        RssMode parse_mode(const std::string &m)
        {
            if (m == "siso")
                return RssMode::siso;
            if (m == "mimo")
                return RssMode::mimo;
            throw InputError(fmt::format("--mode: expected siso or mimo, got '{}'", m));
        }

        MimoBeam parse_beam(const std::string &b)
        {
            if (b == "uniform")
                return MimoBeam::uniform;
            if (b == "sum_power")
                return MimoBeam::sum_power;
            if (b == "mrt")
                return MimoBeam::mrt;
            throw InputError(fmt::format("--beam: expected uniform, sum_power or mrt, got '{}'", b));
        }

        ZPolicy parse_z_policy(const std::string &z)
        {
            if (z == "exclude")
                return ZPolicy::exclude;
            if (z == "rank0")
                return ZPolicy::rank0;
            throw InputError(fmt::format("--z-policy: expected exclude or rank0, got '{}'", z));
        }

        std::vector<Method> parse_methods(const std::string &m)
        {
            if (m == "all")
                return {Method::kriging, Method::spline, Method::makima};
            return {parse_method(m)};
        }

        KrigingConfig kriging_config(const RunConfig &cfg)
        {
            return validated(KrigingConfig{cfg.m, cfg.r0});
        }

        std::filesystem::path rank_dir(const RunConfig &cfg)
        {
            return cfg.rank_dir.empty() ? cfg.out : cfg.rank_dir;
        }

        Vec3 point(const std::vector<double> &v, const char *flag)
        {
            if (v.size() != 3)
                throw InputError(fmt::format("{}: expected x,y,z", flag));
            return {v[0], v[1], v[2]};
        }

        std::map<int, std::string> tagged_paths(const std::vector<std::string> &items, const char *flag)
        {
            std::map<int, std::string> out;
            for (const auto &item : items)
            {
                const auto colon = item.find(':');
                if (colon == std::string::npos || colon == 0)
                    throw InputError(fmt::format("{}: expected ID:path, got '{}'", flag, item));
                int id = 0;
                try
                {
                    std::size_t used = 0;
                    id = std::stoi(item.substr(0, colon), &used);
                    if (used != colon)
                        throw std::invalid_argument(item);
                }
                catch (const std::exception &)
                {
                    throw InputError(fmt::format("{}: '{}' is not an integer tower id", flag, item.substr(0, colon)));
                }
                if (!out.emplace(id, item.substr(colon + 1)).second)
                    throw InputError(fmt::format("{}: tower {} given twice", flag, id));
            }
            return out;
        }

        std::string mode_tag(RssMode m) { return m == RssMode::siso ? "siso" : "mimo"; }

        void add_coverage(std::vector<Output> &out, ordered_json &summary, const std::string &stem,
                          const CoverageGrid &g, PgmRange range)
        {
            out.push_back({stem + ".csv", grid_csv(g.grid, g.values)});
            out.push_back({stem + ".pgm", coverage_pgm(g, range)});
            const auto cdf = rss_cdf(g);
            out.push_back({"cdf_" + stem + ".csv", cdf_csv(cdf)});
            summary["grids"].push_back({{"name", stem},
                                        {"tower", g.tower_id == kJointTower ? ordered_json("joint") : ordered_json(g.tower_id)},
                                        {"altitude_m", g.altitude},
                                        {"blockage_fraction", g.blockage_fraction()}});
        }
    } // namespace

    std::vector<Output> cmd_coverage(const RunConfig &cfg)
    {
        const Scene s = require_scene(cfg);
        if (s.towers.empty())
            throw InputError("coverage: scene has no towers");
        const auto altitudes = altitudes_for(cfg, s);
        CoverageOptions opt;
        opt.mode = parse_mode(cfg.mode);
        opt.beam = parse_beam(cfg.beam);
        opt.max_reflections = cfg.max_reflections;
        if (cfg.pgm_range.size() != 2 || !(cfg.pgm_range[1] > cfg.pgm_range[0]))
            throw InputError("--pgm-range: expected lo,hi with hi > lo");
        const PgmRange range{cfg.pgm_range[0], cfg.pgm_range[1]};

        std::vector<const Tower *> towers;
        if (cfg.tower && !cfg.joint)
            towers.push_back(&s.tower(*cfg.tower));
        else
            for (const auto &t : s.towers)
                towers.push_back(&t);

        std::vector<Output> out;
        ordered_json summary;
        summary["mode"] = mode_tag(opt.mode);
        summary["grids"] = ordered_json::array();
        for (double h : altitudes)
        {
            std::vector<CoverageGrid> grids;
            for (const Tower *t : towers)
            {
                grids.push_back(compute_coverage(s, *t, h, opt));
                add_coverage(out, summary,
                             fmt::format("coverage_t{}_h{}_{}", t->id, number_tag(h), mode_tag(opt.mode)), grids.back(),
                             range);
            }
            if (cfg.joint)
            {
                const auto joint = joint_coverage(s, grids);
                add_coverage(out, summary, fmt::format("coverage_joint_h{}_{}", number_tag(h), mode_tag(opt.mode)), joint,
                             range);
                std::vector<std::optional<double>> serving(joint.serving.begin(), joint.serving.end());
                out.push_back({fmt::format("serving_joint_h{}.csv", number_tag(h)), grid_csv(joint.grid, serving, 0)});
            }
        }
        out.push_back({"coverage_summary.json", summary.dump(2) + "\n"});
        return out;
    }

    std::vector<Output> cmd_rank(const RunConfig &cfg)
    {
        const Scene s = require_scene(cfg);
        check_thresholds(cfg);
        const auto altitudes = altitudes_for(cfg, s);
        const auto rg = compute_rank_grid(s, altitudes, cfg.thresholds, cfg.max_reflections);

        std::vector<Output> out;
        for (auto &f : rank_grid_files(rg))
            out.push_back({f.name, std::move(f.content)});
        ordered_json summary;
        summary["altitudes"] = ordered_json::array();
        for (std::size_t a = 0; a < rg.altitudes.size(); ++a)
        {
            for (std::size_t k = 0; k < rg.thresholds.size(); ++k)
                out.push_back({fmt::format("hist_h{}_K{}.csv", number_tag(rg.altitudes[a]), number_tag(rg.thresholds[k])),
                               histogram_csv(rank_histogram(rg, a, k))});
            summary["altitudes"].push_back(
                {{"altitude_m", rg.altitudes[a]}, {"blockage_fraction", rg.blockage_fraction(a)}});
        }
        out.push_back({"rank_summary.json", summary.dump(2) + "\n"});
        return out;
    }

    std::vector<Output> cmd_fit(const RunConfig &cfg)
    {
        if (!(cfg.max_dist > 0.0))
            throw InputError("--max-dist: must be > 0");
        const auto rg = read_rank_grid(rank_dir(cfg));
        const auto model = fit_correlation_model(rg, parse_z_policy(cfg.z_policy), cfg.max_dist);
        return {{"correlation_bins.csv", bins_csv(model.bins)}, {"correlation_model.json", model_json(model)}};
    }

    std::vector<Output> cmd_interpolate(const RunConfig &cfg)
    {
        const auto methods = parse_methods(cfg.method);
        LooOptions opt;
        opt.kriging = kriging_config(cfg);
        opt.round = cfg.round;
        const auto rg = read_rank_grid(rank_dir(cfg));
        const auto model_path = cfg.model.empty() ? cfg.out / "correlation_model.json" : cfg.model;
        const auto model = parse_model_json(read_text_file(model_path));

        std::vector<Output> out;
        out.push_back({"mae_report.csv", mae_csv(loo_evaluate(rg, methods, opt, model.coefficients))});
        if (cfg.export_estimates)
        {
            for (std::size_t k = 0; k < rg.thresholds.size(); ++k)
            {
                const auto field = RankField::from_grid(rg, k);
                for (Method m : methods)
                    for (std::size_t a = 0; a < rg.altitudes.size(); ++a)
                        out.push_back({fmt::format("estimate_{}_h{}_K{}.csv", method_name(m), number_tag(rg.altitudes[a]),
                                                   number_tag(rg.thresholds[k])),
                                       grid_csv(rg.grid, loo_estimates(field, a, m, opt, model.coefficients))});
            }
        }
        return out;
    }

    std::vector<Output> cmd_calibrate(const RunConfig &cfg)
    {
        const auto measured = tagged_paths(cfg.measured, "--measured");
        const auto simulated = tagged_paths(cfg.simulated, "--simulated");
        if (measured.empty())
            throw InputError("calibrate: at least one --measured ID:path is required");
        std::string csv = "tower,offset_db,rmse_db,pairs\n";
        for (const auto &[id, path] : measured)
        {
            const auto sim = simulated.find(id);
            if (sim == simulated.end())
                throw InputError(fmt::format("calibrate: no --simulated trace for tower {}", id));
            const auto c = calibrate_offset(load_trace_file(path), load_trace_file(sim->second));
            csv += fmt::format("{},{:.1f},{:.6f},{}\n", id, c.offset_db, c.rmse_db, c.pairs);
        }
        return {{"calibration.csv", csv}};
    }

    std::vector<Output> cmd_synth(const RunConfig &cfg)
    {
        check_thresholds(cfg);
        GridSpec grid;
        std::vector<double> altitudes = cfg.altitudes;
        if (!cfg.scene.empty())
        {
            const Scene s = load_scene_file(cfg.scene);
            grid = grid_spec(s);
            if (altitudes.empty())
                altitudes = s.altitudes_m;
        }
        else
        {
            if (cfg.nx < 1 || cfg.ny < 1 || !(cfg.spacing > 0.0))
                throw InputError("synth: --nx, --ny must be >= 1 and --spacing > 0");
            grid = {cfg.nx, cfg.ny, cfg.spacing, {0.0, 0.0}};
        }
        if (altitudes.empty())
            altitudes = SynthOptions{}.altitudes;
        SynthOptions opt;
        opt.altitudes = altitudes;
        opt.thresholds = cfg.thresholds;
        opt.altitude_coupling = cfg.coupling;
        const SyntheticFieldGenerator gen(grid, kReferenceCorrelation);
        const auto rg = gen.generate(cfg.seed, opt);

        std::vector<Output> out;
        for (auto &f : rank_grid_files(rg))
            out.push_back({f.name, std::move(f.content)});
        ordered_json meta;
        meta["seed"] = cfg.seed;
        meta["altitude_coupling"] = cfg.coupling;
        meta["model"] = {{"c1", kReferenceCorrelation.c1},
                         {"c2", kReferenceCorrelation.c2},
                         {"c3", kReferenceCorrelation.c3},
                         {"c4", kReferenceCorrelation.c4}};
        out.push_back({"synth.json", meta.dump(2) + "\n"});
        return out;
    }

    std::vector<Output> cmd_trace(const RunConfig &cfg)
    {
        const Scene s = require_scene(cfg);
        const auto paths = trace_paths(s, point(cfg.tx, "--tx"), point(cfg.rx, "--rx"), cfg.max_reflections);
        return {{"paths.csv", paths_to_csv(paths)}};
    }

    int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
    {
        RunConfig cfg;
        CLI::App app{"Coverage and MIMO channel-rank maps for UAV links, with Kriging interpolation", "uavrank"};
        app.require_subcommand(1);
        app.option_defaults()->always_capture_default();

        app.add_option("--scene", cfg.scene, "Scene JSON document");
        app.add_option("--out", cfg.out, "Output directory");
        app.add_option("--altitudes", cfg.altitudes, "Receiver altitudes in m (comma separated)")->delimiter(',');
        app.add_option("--thresholds", cfg.thresholds, "Singular value ratio constants K (comma separated)")
            ->delimiter(',');
        app.add_option("--mode", cfg.mode, "RSS mode: siso or mimo");
        app.add_option("--beam", cfg.beam, "MIMO power metric: uniform, sum_power or mrt");
        app.add_option("--m", cfg.m, "Kriging samples per target");
        app.add_option("--r0", cfg.r0, "Kriging sampling radius in m");
        app.add_option("--max-dist", cfg.max_dist, "Largest pair distance in the correlation fit, m");
        app.add_flag("--round", cfg.round, "Round estimates to integer ranks before scoring");
        app.add_option("--z-policy", cfg.z_policy, "Out-of-coverage cells in rank vectors: exclude or rank0");
        app.add_option("--seed", cfg.seed, "Seed for synthetic fields");
        app.add_option("--max-reflections", cfg.max_reflections, "Reflection order limit (0, 1 or 2)");

        auto *coverage = app.add_subcommand("coverage", "RSS grids, heatmaps and CDFs per tower and altitude");
        coverage->add_flag("--joint", cfg.joint, "Also write the nearest-tower joint coverage");
        coverage->add_option("--tower", cfg.tower, "Only this tower id");
        coverage->add_option("--pgm-range", cfg.pgm_range, "Heatmap dBm range lo,hi")->delimiter(',');

        auto *rank = app.add_subcommand("rank", "Channel rank grids and histograms");

        auto *fit = app.add_subcommand("fit", "Fit the correlation-vs-distance model to a rank grid");
        fit->add_option("--rank-dir", cfg.rank_dir, "Directory holding rank_grid.json (default: --out)");

        auto *interpolate = app.add_subcommand("interpolate", "Leave-one-out MAE of Kriging and index baselines");
        interpolate->add_option("--rank-dir", cfg.rank_dir, "Directory holding rank_grid.json (default: --out)");
        interpolate->add_option("--model", cfg.model, "Correlation model JSON (default: <out>/correlation_model.json)");
        interpolate->add_option("--method", cfg.method, "kriging, spline, makima or all");
        interpolate->add_flag("--export-estimates", cfg.export_estimates, "Write per-slice estimate grids");

        auto *calibrate = app.add_subcommand("calibrate", "Offset between measured and simulated traces");
        calibrate->add_option("--measured", cfg.measured, "ID:path of a measured trace CSV");
        calibrate->add_option("--simulated", cfg.simulated, "ID:path of a simulated trace CSV");

        auto *synth = app.add_subcommand("synth", "Seeded synthetic rank field with the reference correlation");
        synth->add_option("--nx", cfg.nx, "Grid points west to east");
        synth->add_option("--ny", cfg.ny, "Grid points south to north");
        synth->add_option("--spacing", cfg.spacing, "Grid spacing in m");
        synth->add_option("--coupling", cfg.coupling, "Share of the latent field common to all altitudes");

        auto *trace = app.add_subcommand("trace", "Dump the traced paths between two points");
        trace->add_option("--tx", cfg.tx, "Transmitter x,y,z")->delimiter(',')->required();
        trace->add_option("--rx", cfg.rx, "Receiver x,y,z")->delimiter(',')->required();

        for (auto *sub : {coverage, rank, fit, interpolate, calibrate, synth, trace})
            sub->fallthrough();

        try
        {
            app.parse(argc, argv);
        }
        catch (const CLI::ParseError &e)
        {
            const int code = app.exit(e, out, err);
            return code == 0 ? kExitOk : kExitInput;
        }

        cfg.command = app.get_subcommands().front()->get_name();
        try
        {
            std::vector<Output> files;
            if (cfg.command == "coverage")
                files = cmd_coverage(cfg);
            else if (cfg.command == "rank")
                files = cmd_rank(cfg);
            else if (cfg.command == "fit")
                files = cmd_fit(cfg);
            else if (cfg.command == "interpolate")
                files = cmd_interpolate(cfg);
            else if (cfg.command == "calibrate")
                files = cmd_calibrate(cfg);
            else if (cfg.command == "synth")
                files = cmd_synth(cfg);
            else
                files = cmd_trace(cfg);

            std::error_code ec;
            std::filesystem::create_directories(cfg.out, ec);
            if (ec)
                throw InputError(fmt::format("cannot create output directory '{}': {}", cfg.out.string(), ec.message()));
            for (const auto &f : files)
                write_text_file(cfg.out / f.name, f.content);
            out << fmt::format("{}: wrote {} file(s) to {}\n", cfg.command, files.size(), cfg.out.string());
            return kExitOk;
        }
        catch (const InputError &e)
        {
            err << "error: " << e.what() << "\n";
            return kExitInput;
        }
        catch (const NumericalError &e)
        {
            err << "numerical error: " << e.what() << "\n";
            return kExitNumerical;
        }
        catch (const std::exception &e)
        {
            err << "error: " << e.what() << "\n";
            return kExitInput;
        }
    }

} // namespace uavrank::cli
