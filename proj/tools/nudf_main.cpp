// Copyright (c) the nudf authors
// SPDX-License-Identifier: Apache-2.0

#include "nudf/bvh.hpp"
#include "nudf/config_io.hpp"
#include "nudf/field.hpp"
#include "nudf/fixtures.hpp"
#include "nudf/mesh_io.hpp"
#include "nudf/mlp.hpp"
#include "nudf/parallel.hpp"
#include "nudf/pipeline.hpp"
#include "nudf/sampler.hpp"
#include "nudf/shape_diameter.hpp"
#include "nudf/surface.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

using namespace nudf;
namespace fs = std::filesystem;

namespace {

std::uint64_t parse_u64(const std::string& what, const std::string& text) {
    std::uint64_t v = 0;
    const char* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), last, v);
    if (ec != std::errc() || ptr != last || text.empty())
        throw InputError(what + " is not an unsigned integer: '" + text + "'");
    return v;
}

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError("'" + path + "': " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << text;
    if (!out) throw IoError("short write to '" + path + "'");
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
    write_text_file(path, j.dump(2) + "\n");
}

// Deferred flag application, so the precedence is fixed regardless of where
// a value comes from: defaults, then NUDF_SEED, then --config, then flags.
struct FlagOverrides {
    std::vector<std::pair<CLI::Option*, std::function<void(PipelineConfig&)>>> entries;

    void bind(CLI::Option* opt, std::function<void(PipelineConfig&)> apply) {
        entries.emplace_back(opt, std::move(apply));
    }
    void apply(PipelineConfig& cfg) const {
        for (const auto& [opt, fn] : entries)
            if (opt->count() > 0) fn(cfg);
    }
};

// Registers an option whose value is written into the config slot returned
// by select, but only when the option shows up on the command line.
template <typename T, typename Select>
CLI::Option* add_setting(CLI::App& cmd, FlagOverrides& flags, const std::string& name,
                         const std::string& help, Select select) {
    auto buffer = std::make_shared<T>();
    CLI::Option* opt = cmd.add_option(name, *buffer, help);
    flags.bind(opt, [buffer, select](PipelineConfig& cfg) { select(cfg) = *buffer; });
    return opt;
}

template <typename Select>
CLI::Option* add_toggle(CLI::App& cmd, FlagOverrides& flags, const std::string& name,
                        const std::string& help, Select select) {
    auto buffer = std::make_shared<bool>();
    CLI::Option* opt = cmd.add_flag(name, *buffer, help);
    flags.bind(opt, [buffer, select](PipelineConfig& cfg) { select(cfg) = *buffer; });
    return opt;
}

struct CommandContext {
    std::string config_path;
    int threads = -1;
    FlagOverrides flags;

    PipelineConfig resolve() const {
        if (threads >= 0) set_thread_count(threads);
        PipelineConfig cfg;
        if (const char* env = std::getenv("NUDF_SEED")) cfg.seed = parse_u64("NUDF_SEED", env);
        if (!config_path.empty()) cfg = pipeline_config_from_json(read_json_file(config_path), cfg);
        flags.apply(cfg);
        return cfg;
    }
};

void add_common(CLI::App& cmd, CommandContext& ctx) {
    cmd.add_option("--config", ctx.config_path, "JSON settings file; flags override its values")
        ->check(CLI::ExistingFile);
    cmd.add_option("--threads", ctx.threads, "parallelism cap, 0 = hardware (default: NUDF_THREADS)");
    add_setting<std::uint64_t>(cmd, ctx.flags, "--seed",
                               "global seed; stages run at fixed offsets from it (default: NUDF_SEED)",
                               [](PipelineConfig& c) -> std::uint64_t& { return c.seed; });
}

void add_sampler_settings(CLI::App& cmd, FlagOverrides& flags) {
    add_setting<std::size_t>(cmd, flags, "--n-uniform", "uniform volume samples",
                             [](PipelineConfig& c) -> std::size_t& { return c.sampler.n_uniform; });
    add_setting<std::size_t>(cmd, flags, "--n-surface", "near-surface samples (emitted in pairs)",
                             [](PipelineConfig& c) -> std::size_t& { return c.sampler.n_surface; });
    add_setting<double>(cmd, flags, "--lambda", "selection weight for small-SD candidates",
                        [](PipelineConfig& c) -> double& { return c.sampler.lambda; });
    add_setting<double>(cmd, flags, "--sd-threshold", "small/large SD split, input units",
                        [](PipelineConfig& c) -> double& { return c.sampler.sd_threshold; });
    add_setting<double>(cmd, flags, "--sigma1", "first large-SD offset sigma, input units",
                        [](PipelineConfig& c) -> double& { return c.sampler.sigma1; });
    add_setting<double>(cmd, flags, "--sigma2", "second large-SD offset sigma, input units",
                        [](PipelineConfig& c) -> double& { return c.sampler.sigma2; });
    add_setting<double>(cmd, flags, "--sigma-split", "fraction of large-SD offsets using sigma1",
                        [](PipelineConfig& c) -> double& { return c.sampler.sigma_split; });
}

void add_sd_settings(CLI::App& cmd, FlagOverrides& flags) {
    add_setting<int>(cmd, flags, "--sd-rays", "rays per shape-diameter cone",
                     [](PipelineConfig& c) -> int& { return c.sampler.sd.n_rays; });
    add_setting<double>(cmd, flags, "--sd-cone-deg", "cone half angle in degrees",
                        [](PipelineConfig& c) -> double& { return c.sampler.sd.cone_half_angle_deg; });
    auto agg = std::make_shared<SdConfig::Aggregation>();
    CLI::Option* opt =
        cmd.add_option("--sd-aggregation", *agg, "ray aggregation")
            ->transform(CLI::CheckedTransformer(
                std::map<std::string, SdConfig::Aggregation>{
                    {"mean", SdConfig::Aggregation::Mean},
                    {"robust", SdConfig::Aggregation::RobustMedianFiltered}},
                CLI::ignore_case));
    flags.bind(opt, [agg](PipelineConfig& c) { c.sampler.sd.aggregation = *agg; });
}

void add_train_settings(CLI::App& cmd, FlagOverrides& flags) {
    add_setting<int>(cmd, flags, "--frequencies", "Fourier frequencies per axis",
                     [](PipelineConfig& c) -> int& { return c.mlp.n_frequencies; });
    add_setting<int>(cmd, flags, "--layers", "hidden layers",
                     [](PipelineConfig& c) -> int& { return c.mlp.hidden_layers; });
    add_setting<int>(cmd, flags, "--width", "hidden layer width",
                     [](PipelineConfig& c) -> int& { return c.mlp.hidden_width; });
    auto act = std::make_shared<MlpConfig::Activation>();
    CLI::Option* opt = cmd.add_option("--activation", *act, "hidden activation")
                           ->transform(CLI::CheckedTransformer(
                               std::map<std::string, MlpConfig::Activation>{
                                   {"relu", MlpConfig::Activation::Relu},
                                   {"softplus", MlpConfig::Activation::Softplus}},
                               CLI::ignore_case));
    flags.bind(opt, [act](PipelineConfig& c) { c.mlp.activation = *act; });
    add_setting<double>(cmd, flags, "--lr", "Adam learning rate",
                        [](PipelineConfig& c) -> double& { return c.train.learning_rate; });
    add_setting<std::size_t>(cmd, flags, "--batch", "minibatch size",
                             [](PipelineConfig& c) -> std::size_t& { return c.train.batch_size; });
    add_setting<int>(cmd, flags, "--epochs", "maximum training epochs",
                     [](PipelineConfig& c) -> int& { return c.train.max_epochs; });
    add_setting<int>(cmd, flags, "--patience", "epochs without validation improvement",
                     [](PipelineConfig& c) -> int& { return c.train.early_stop_patience; });
    add_setting<double>(cmd, flags, "--holdout", "validation fraction",
                        [](PipelineConfig& c) -> double& { return c.train.holdout_fraction; });
    auto clamp = std::make_shared<double>();
    CLI::Option* copt = cmd.add_option("--clamp", *clamp, "cap distance labels, input units");
    flags.bind(copt, [clamp](PipelineConfig& c) { c.train.target_clamp = *clamp; });
}

void add_extract_settings(CLI::App& cmd, FlagOverrides& flags) {
    add_setting<std::size_t>(cmd, flags, "--target", "points to extract",
                             [](PipelineConfig& c) -> std::size_t& { return c.extract.target_points; });
    add_setting<std::size_t>(cmd, flags, "--n-initial", "uniform seeds in round 0",
                             [](PipelineConfig& c) -> std::size_t& { return c.extract.n_initial; });
    add_setting<int>(cmd, flags, "--max-iters", "projection steps per seed",
                     [](PipelineConfig& c) -> int& { return c.extract.max_iters; });
    add_setting<double>(cmd, flags, "--accept-tol", "residual bound, <=0 auto",
                        [](PipelineConfig& c) -> double& { return c.extract.accept_tol; });
    add_setting<double>(cmd, flags, "--reseed-sigma", "reseed noise sigma, <=0 auto",
                        [](PipelineConfig& c) -> double& { return c.extract.reseed_sigma; });
    add_setting<int>(cmd, flags, "--max-rounds", "extraction rounds",
                     [](PipelineConfig& c) -> int& { return c.extract.max_rounds; });
    add_toggle(cmd, flags, "--normalize-gradient,!--raw-gradient", "step along g/|g| vs raw g",
               [](PipelineConfig& c) -> bool& { return c.extract.normalize_gradient; });
}

void add_meshing_settings(CLI::App& cmd, FlagOverrides& flags) {
    add_setting<std::size_t>(cmd, flags, "--subsample", "blue-noise subsample target",
                             [](PipelineConfig& c) -> std::size_t& { return c.meshing.subsample_target; });
    add_setting<int>(cmd, flags, "--knn", "neighbors for normal estimation",
                     [](PipelineConfig& c) -> int& { return c.meshing.knn_normals; });
    auto radii = std::make_shared<std::vector<double>>();
    CLI::Option* opt = cmd.add_option("--radius", *radii, "pivoting ball radii (repeatable), empty = auto");
    flags.bind(opt, [radii](PipelineConfig& c) { c.meshing.bpa_radii = *radii; });
    add_setting<double>(cmd, flags, "--support", "support cull radius",
                        [](PipelineConfig& c) -> double& { return c.meshing.support_radius; });
    add_setting<double>(cmd, flags, "--holes", "largest hole radius to close",
                        [](PipelineConfig& c) -> double& { return c.meshing.hole_max_radius; });
}

void add_metrics_settings(CLI::App& cmd, FlagOverrides& flags) {
    add_setting<std::size_t>(cmd, flags, "--n-samples", "surface samples per direction",
                             [](PipelineConfig& c) -> std::size_t& { return c.metrics.n_samples; });
    add_setting<double>(cmd, flags, "--accuracy-fraction", "accuracy quantile",
                        [](PipelineConfig& c) -> double& { return c.metrics.accuracy_fraction; });
    add_setting<double>(cmd, flags, "--completion-tol", "completion distance tolerance",
                        [](PipelineConfig& c) -> double& { return c.metrics.completion_tol; });
}

CLI::Option* add_normalize_toggle(CLI::App& cmd, FlagOverrides& flags) {
    return add_toggle(cmd, flags, "--normalize,!--no-normalize",
                      "map the input mesh into [-1,1]^3 before sampling",
                      [](PipelineConfig& c) -> bool& { return c.normalize; });
}

// sample: mesh -> labelled training set, mirroring the pipeline's first stage.
struct SampleCmd {
    CommandContext ctx;
    std::string mesh_in, samples_out;

    void run() const {
        PipelineConfig cfg = ctx.resolve();
        TriangleMesh mesh = load_mesh(mesh_in);
        if (cfg.normalize) cfg.transform = normalization_to_unit_cube(mesh);
        const TriangleMesh work = mesh.transformed(cfg.transform);
        const PipelineConfig resolved = resolve_config(cfg, cfg.transform.scale);
        const MeshIndex index = build_index(work);
        SampleSet set = build_training_set(work, index, resolved.sampler);
        set.meta.transform = cfg.transform;
        write_samples(set, samples_out);
        std::cerr << "sample: " << set.size() << " labelled points -> " << samples_out << "\n";
    }
};

// sd: per-sample shape diameter as a point cloud, in input units.
struct SdCmd {
    CommandContext ctx;
    std::string mesh_in, cloud_out;
    std::size_t n = 10000;

    void run() const {
        const PipelineConfig cfg = ctx.resolve();
        const TriangleMesh mesh = load_mesh(mesh_in);
        const MeshIndex index = build_index(mesh);
        const std::uint64_t seed = cfg.seed + kSampleSeedOffset;
        const SurfaceSamples samples = area_weighted_sample(mesh, n, seed);
        const std::vector<SdResult> sds = shape_diameter_field(index, samples, cfg.sampler.sd, seed);

        PointCloud cloud;
        cloud.points = samples.points;
        cloud.normals = samples.normals;
        cloud.scalar_name = "sd";
        cloud.scalars.reserve(sds.size());
        for (const SdResult& r : sds) cloud.scalars.push_back(r.min_sd().value_or(-1.0));
        save_point_cloud(cloud, cloud_out);
        std::cerr << "sd: " << cloud.points.size() << " samples -> " << cloud_out << "\n";
    }
};

// fit: training set -> network weights plus a training report.
struct FitCmd {
    CommandContext ctx;
    std::string samples_in, weights_out, report_out;

    void run() const {
        const PipelineConfig cfg = ctx.resolve();
        const PipelineConfig resolved = resolve_config(cfg, 1.0);
        const SampleSet set = read_samples(samples_in);

        MlpField mlp = init_mlp(resolved.mlp, resolved.train.seed);
        mlp.set_domain(set.meta.config.domain);
        const TrainReport report = train(mlp, set, resolved.train);
        save_weights(mlp, weights_out);

        std::string report_path = report_out;
        if (report_path.empty())
            report_path = fs::path(weights_out).replace_extension(".train.json").string();
        write_json_file(report_path, to_json(report));
        std::cerr << "fit: " << report.epochs << " epochs, validation L1 " << report.final_val_l1
                  << " -> " << weights_out << "\n";
    }
};

// extract: field -> dense surface point cloud with residual attribute.
struct ExtractCmd {
    CommandContext ctx;
    std::string cloud_out, weights_in, grid_in, analytic;

    void run() const {
        const PipelineConfig cfg = ctx.resolve();
        const PipelineConfig resolved = resolve_config(cfg, 1.0);

        std::unique_ptr<DistanceField> field;
        std::string field_id;
        if (!weights_in.empty()) {
            field = std::make_unique<MlpField>(load_weights(weights_in));
            field_id = weights_in;
        } else if (!grid_in.empty()) {
            field = std::make_unique<GridField>(load_grid(grid_in));
            field_id = grid_in;
        } else {
            field = make_analytic_field(analytic);
            field_id = analytic;
        }

        const DensePointCloud cloud = extract_dense_cloud(*field, resolved.extract, field_id);
        save_point_cloud(cloud_with_residuals(cloud), cloud_out);
        std::cerr << "extract: " << cloud.size() << " points"
                  << (cloud.shortfall ? " (short of target)" : "") << " -> " << cloud_out << "\n";
    }
};

// mesh: point cloud -> open-surface triangle mesh, or repair of an imported
// reconstruction. Lengths are in the units of the input cloud.
struct MeshCmd {
    CommandContext ctx;
    std::string cloud_in, mesh_out, recon = "internal", mesh_in;

    void run() const {
        const PipelineConfig cfg = ctx.resolve();
        const PipelineConfig resolved = resolve_config(cfg, 1.0);
        const PointCloud cloud = load_point_cloud(cloud_in);

        TriangleMesh out;
        if (recon == "external") {
            if (mesh_in.empty()) throw InputError("mesh: --recon external needs --mesh-in");
            TriangleMesh imported = load_mesh(mesh_in);
            out = repair_mesh(imported, cloud, resolved.meshing);
        } else {
            out = mesh_from_cloud(cloud, resolved.meshing);
        }
        save_mesh(out, mesh_out);
        std::cerr << "mesh: " << out.vertices.size() << " vertices, " << out.triangles.size()
                  << " triangles, " << boundary_loops(out).size() << " boundary loops -> "
                  << mesh_out << "\n";
    }
};

// metrics: two meshes -> evaluation report JSON.
struct MetricsCmd {
    CommandContext ctx;
    std::string pred_in, gt_in, report_out;

    void run() const {
        const PipelineConfig cfg = ctx.resolve();
        const PipelineConfig resolved = resolve_config(cfg, 1.0);
        const TriangleMesh pred = load_mesh(pred_in);
        const TriangleMesh gt = load_mesh(gt_in);
        const MetricsReport report = evaluate_metrics(pred, gt, resolved.metrics);
        write_json_file(report_out, to_json(report));
        std::cerr << "metrics: chamfer " << report.chamfer << ", accuracy " << report.accuracy
                  << ", completion " << report.completion << " -> " << report_out << "\n";
    }
};

// pipeline: mesh -> samples, weights, cloud, mesh, and report in one run.
struct PipelineCmd {
    CommandContext ctx;
    std::string mesh_in, outdir;

    void run() const {
        const PipelineConfig cfg = ctx.resolve();
        const TriangleMesh input = load_mesh(mesh_in);
        fs::create_directories(outdir);

        const PipelineResult result = run_pipeline(input, cfg);
        const fs::path dir(outdir);
        write_json_file((dir / "config.json").string(), to_json(result.config));
        save_mesh(result.reference, (dir / "reference.ply").string());
        write_samples(result.samples, (dir / "samples.nuds").string());
        save_weights(result.field, (dir / "weights.nudw").string());
        write_json_file((dir / "train.json").string(), to_json(result.train_report));
        save_point_cloud(cloud_with_residuals(result.cloud), (dir / "cloud.ply").string());
        save_mesh(result.mesh, (dir / "mesh.ply").string());
        write_json_file((dir / "report.json").string(), to_json(result.report));

        std::cerr << "pipeline: " << result.samples.size() << " samples, "
                  << result.train_report.epochs << " epochs, " << result.cloud.size()
                  << " points, " << result.mesh.triangles.size() << " triangles\n"
                  << "pipeline: chamfer " << result.report.chamfer << ", accuracy "
                  << result.report.accuracy << ", completion " << result.report.completion
                  << " (working units) -> " << (dir / "report.json").string() << "\n";
    }
};

// fixtures: the synthetic corpus the tests run on, with a manifest.
struct FixturesCmd {
    CommandContext ctx;
    std::string outdir;

    void run() const {
        ctx.resolve();
        fs::create_directories(outdir);

        struct Entry {
            const char* name;
            TriangleMesh mesh;
            bool watertight;
        };
        const Entry entries[] = {
            {"sphere", fixtures::icosphere(25, 4), true},
            {"torus", fixtures::torus(18, 7, 96, 48), true},
            {"capsule", fixtures::capsule(Vec3(0, 0, -14), Vec3(0, 0, 14), 9), true},
            {"appendage", fixtures::appendage(4), true},
            {"hemisphere", fixtures::hemisphere(25, 24, 64), false},
            {"plates", fixtures::plate_pair(20, 4), false},
            {"dumbbell", fixtures::dumbbell().mesh, false},
        };

        nlohmann::json manifest;
        manifest["units"] = "mm";
        manifest["fixtures"] = nlohmann::json::array();
        const fs::path dir(outdir);
        for (const Entry& e : entries) {
            const std::string file = std::string(e.name) + ".ply";
            save_mesh(e.mesh, (dir / file).string());
            manifest["fixtures"].push_back({{"name", e.name},
                                            {"file", file},
                                            {"vertices", e.mesh.vertices.size()},
                                            {"triangles", e.mesh.triangles.size()},
                                            {"watertight", e.watertight}});
        }
        write_json_file((dir / "fixtures.json").string(), manifest);
        std::cerr << "fixtures: " << std::size(entries) << " meshes -> " << outdir << "\n";
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"neural unsigned distance fields: sample, fit, extract, mesh, score"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "nudf 0.1.0");

    if (const char* env = std::getenv("NUDF_THREADS")) {
        try {
            set_thread_count(static_cast<int>(parse_u64("NUDF_THREADS", env)));
        } catch (const InputError& e) {
            std::cerr << "nudf: " << e.what() << "\n";
            return 2;
        }
    }

    SampleCmd sample_cmd;
    {
        CLI::App* cmd = app.add_subcommand("sample", "generate a labelled training set from a mesh");
        cmd->add_option("mesh", sample_cmd.mesh_in, "input mesh (.ply/.obj)")->required();
        cmd->add_option("samples", sample_cmd.samples_out, "output sample file (.nuds)")->required();
        add_common(*cmd, sample_cmd.ctx);
        add_normalize_toggle(*cmd, sample_cmd.ctx.flags);
        add_sampler_settings(*cmd, sample_cmd.ctx.flags);
        add_sd_settings(*cmd, sample_cmd.ctx.flags);
        cmd->callback([&sample_cmd] { sample_cmd.run(); });
    }

    SdCmd sd_cmd;
    {
        CLI::App* cmd = app.add_subcommand("sd", "shape diameter at surface samples, as a point cloud");
        cmd->add_option("mesh", sd_cmd.mesh_in, "input mesh (.ply/.obj)")->required();
        cmd->add_option("cloud", sd_cmd.cloud_out, "output point cloud (.ply), scalar 'sd', -1 = no hit")
            ->required();
        cmd->add_option("--n", sd_cmd.n, "surface sample count");
        add_common(*cmd, sd_cmd.ctx);
        add_sd_settings(*cmd, sd_cmd.ctx.flags);
        cmd->callback([&sd_cmd] { sd_cmd.run(); });
    }

    FitCmd fit_cmd;
    {
        CLI::App* cmd = app.add_subcommand("fit", "train a neural distance field on a sample file");
        cmd->add_option("samples", fit_cmd.samples_in, "training samples (.nuds)")->required();
        cmd->add_option("weights", fit_cmd.weights_out, "output weights (.nudw)")->required();
        cmd->add_option("--report", fit_cmd.report_out,
                        "training report path (default: weights with .train.json)");
        add_common(*cmd, fit_cmd.ctx);
        add_train_settings(*cmd, fit_cmd.ctx.flags);
        cmd->callback([&fit_cmd] { fit_cmd.run(); });
    }

    ExtractCmd extract_cmd;
    {
        CLI::App* cmd = app.add_subcommand("extract", "project a dense point cloud out of a field");
        cmd->add_option("cloud", extract_cmd.cloud_out, "output point cloud (.ply)")->required();
        CLI::App* src = cmd->add_option_group("source", "exactly one field source");
        src->add_option("--weights", extract_cmd.weights_in, "trained weights (.nudw)");
        src->add_option("--grid", extract_cmd.grid_in, "distance grid (.nhdr)");
        src->add_option("--analytic", extract_cmd.analytic, "closed form, e.g. sphere:0,0,0,1");
        src->require_option(1);
        add_common(*cmd, extract_cmd.ctx);
        add_extract_settings(*cmd, extract_cmd.ctx.flags);
        cmd->callback([&extract_cmd] { extract_cmd.run(); });
    }

    MeshCmd mesh_cmd;
    {
        CLI::App* cmd = app.add_subcommand("mesh", "reconstruct an open surface from a point cloud");
        cmd->add_option("cloud", mesh_cmd.cloud_in, "input point cloud (.ply)")->required();
        cmd->add_option("mesh", mesh_cmd.mesh_out, "output mesh (.ply/.obj)")->required();
        cmd->add_option("--recon", mesh_cmd.recon, "reconstruction source")
            ->check(CLI::IsMember({"internal", "external"}));
        cmd->add_option("--mesh-in", mesh_cmd.mesh_in,
                        "externally reconstructed mesh; repair chain only");
        add_common(*cmd, mesh_cmd.ctx);
        add_meshing_settings(*cmd, mesh_cmd.ctx.flags);
        cmd->callback([&mesh_cmd] { mesh_cmd.run(); });
    }

    MetricsCmd metrics_cmd;
    {
        CLI::App* cmd = app.add_subcommand("metrics", "score a predicted mesh against a reference");
        cmd->add_option("pred", metrics_cmd.pred_in, "predicted mesh")->required();
        cmd->add_option("gt", metrics_cmd.gt_in, "reference mesh")->required();
        cmd->add_option("report", metrics_cmd.report_out, "output report (.json)")->required();
        add_common(*cmd, metrics_cmd.ctx);
        add_metrics_settings(*cmd, metrics_cmd.ctx.flags);
        cmd->callback([&metrics_cmd] { metrics_cmd.run(); });
    }

    PipelineCmd pipeline_cmd;
    {
        CLI::App* cmd = app.add_subcommand("pipeline",
                                           "sample, fit, extract, mesh, and score one shape");
        cmd->add_option("mesh", pipeline_cmd.mesh_in, "input mesh (.ply/.obj)")->required();
        cmd->add_option("outdir", pipeline_cmd.outdir, "artifact directory")->required();
        add_common(*cmd, pipeline_cmd.ctx);
        add_normalize_toggle(*cmd, pipeline_cmd.ctx.flags);
        add_sampler_settings(*cmd, pipeline_cmd.ctx.flags);
        add_sd_settings(*cmd, pipeline_cmd.ctx.flags);
        add_train_settings(*cmd, pipeline_cmd.ctx.flags);
        add_extract_settings(*cmd, pipeline_cmd.ctx.flags);
        add_meshing_settings(*cmd, pipeline_cmd.ctx.flags);
        add_metrics_settings(*cmd, pipeline_cmd.ctx.flags);
        cmd->callback([&pipeline_cmd] { pipeline_cmd.run(); });
    }

    FixturesCmd fixtures_cmd;
    {
        CLI::App* cmd = app.add_subcommand("fixtures", "write the synthetic test corpus");
        cmd->add_option("outdir", fixtures_cmd.outdir, "output directory")->required();
        add_common(*cmd, fixtures_cmd.ctx);
        cmd->callback([&fixtures_cmd] { fixtures_cmd.run(); });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "nudf: " << e.what() << "\n";
        return 3;
    } catch (const InputError& e) {
        std::cerr << "nudf: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "nudf: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
