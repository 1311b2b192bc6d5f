#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "manifest.hpp"
#include "paltile/errors.hpp"
#include "paltile/eval.hpp"
#include "paltile/imageio.hpp"
#include "paltile/matrix.hpp"
#include "paltile/matrix_io.hpp"
#include "paltile/objectives.hpp"
#include "paltile/paltiling.hpp"
#include "paltile/synth.hpp"
#include "paltile/version.hpp"
#include "png_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace paltile;
using tools::append_manifest;
using tools::sha256_file;
using tools::utc_timestamp;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Shortest exact decimal representation, identical across runs.
std::string num(double v) { return json(v).dump(); }

struct Stopwatch {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    std::string started = utc_timestamp();

    std::int64_t elapsed_ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - t0)
            .count();
    }
};

json finish_manifest(json entry, const Stopwatch& watch, const std::vector<std::string>& argv) {
    entry["argv"] = argv;
    entry["version"] = kVersion;
    entry["started_utc"] = watch.started;
    entry["finished_utc"] = utc_timestamp();
    entry["wall_ms"] = watch.elapsed_ms();
    return entry;
}

json hash_files(const fs::path& dir, const std::vector<std::string>& names) {
    json out = json::object();
    for (const auto& name : names) out[name] = sha256_file(dir / name);
    return out;
}

struct GenerateArgs {
    std::size_t n = 0, m = 0, rank = 0;
    double q = 0.0, pplus = 0.0, pminus = 0.0;
    std::uint64_t seed = 0;
    std::string out;
};

void run_generate(const GenerateArgs& a, const std::vector<std::string>& argv) {
    Stopwatch watch;
    const fs::path out(a.out);
    fs::create_directories(out);

    GenSpec spec;
    spec.n = a.n;
    spec.m = a.m;
    spec.r_star = a.rank;
    spec.q = a.q;
    spec.p_plus = a.pplus;
    spec.p_minus = a.pminus;
    spec.seed = a.seed;
    const PlantedInstance inst = generate_data(spec);

    write_sparse(out / "data.txt", inst.d);
    write_sparse(out / "x_star.txt", inst.x_star);
    write_sparse(out / "y_star.txt", inst.y_star);
    const auto [pos, neg] = noise_split(inst.noise);
    write_sparse(out / "noise_pos.txt", pos);
    write_sparse(out / "noise_neg.txt", neg);

    const double cells = static_cast<double>(spec.n) * static_cast<double>(spec.m);
    json meta{{"n", spec.n},
              {"m", spec.m},
              {"r_star", spec.r_star},
              {"q", spec.q},
              {"p_plus", spec.p_plus},
              {"p_minus", spec.p_minus},
              {"seed", spec.seed},
              {"density_pct", static_cast<double>(inst.d.ones()) / cells * 100.0},
              {"planted_density_pct", planted_density(inst)},
              {"planted_overlap_pct", planted_overlap(inst)},
              {"noise_positive", pos.ones()},
              {"noise_negative", neg.ones()},
              {"free_weight_law", "w ~ uniform{ceil(cap/10)..cap}, cap = floor(q*free_rows)"}};
    {
        std::ofstream meta_out(out / "metadata.jsonl", std::ios::binary);
        if (!meta_out)
            throw DataError("cannot open for writing: " + (out / "metadata.jsonl").string());
        meta_out << meta.dump() << '\n';
    }

    json entry{{"command", "generate"},
               {"config",
                {{"n", spec.n},
                 {"m", spec.m},
                 {"rank", spec.r_star},
                 {"q", spec.q},
                 {"pplus", spec.p_plus},
                 {"pminus", spec.p_minus}}},
               {"seed", spec.seed},
               {"inputs", json::object()},
               {"outputs", hash_files(out, {"data.txt", "x_star.txt", "y_star.txt",
                                            "noise_pos.txt", "noise_neg.txt",
                                            "metadata.jsonl"})}};
    append_manifest(out / "manifest.jsonl", finish_manifest(std::move(entry), watch, argv));
}

struct FactorizeArgs {
    std::string data, out, model, config_path, thresholds;
    std::uint64_t seed = 0;
    std::size_t delta_r = 0, iters = 0, stop_slack = 0, trace_stride = 0, max_rank = 0;
    double gamma = 0.0;

    CLI::Option* o_model = nullptr;
    CLI::Option* o_seed = nullptr;
    CLI::Option* o_delta = nullptr;
    CLI::Option* o_iters = nullptr;
    CLI::Option* o_gamma = nullptr;
    CLI::Option* o_thresholds = nullptr;
    CLI::Option* o_slack = nullptr;
    CLI::Option* o_stride = nullptr;
    CLI::Option* o_max_rank = nullptr;
};

// Flags override the config file, which overrides the defaults in `base`.
std::pair<PalConfig, ModelKind> resolve_pal_config(const FactorizeArgs& a, PalConfig base) {
    std::optional<ModelKind> model;
    bool seed_set = false;
    if (!a.config_path.empty()) {
        std::ifstream in(a.config_path, std::ios::binary);
        if (!in)
            throw DataError("cannot open: " + a.config_path);
        ParsedConfig parsed = parse_pal_config(in, base);
        base = parsed.config;
        model = parsed.model;
        seed_set = parsed.seed_set;
    }
    if (a.o_delta->count()) base.delta_r = a.delta_r;
    if (a.o_iters->count()) base.iterations = a.iters;
    if (a.o_gamma->count()) base.gamma = a.gamma;
    if (a.o_thresholds->count()) base.thresholds = parse_threshold_list(a.thresholds);
    if (a.o_slack->count()) base.stop_slack = a.stop_slack;
    if (a.o_stride->count()) base.trace_stride = a.trace_stride;
    if (a.o_max_rank->count()) base.max_rank = a.max_rank;
    if (a.o_seed->count()) {
        base.seed = a.seed;
        seed_set = true;
    }
    if (a.o_model->count()) model = parse_model_kind(a.model);
    if (!seed_set)
        throw UsageError("--seed is required (or set seed= in the --config file)");
    if (!model)
        throw UsageError("--model is required (or set model= in the --config file)");
    return {base, *model};
}

void write_trace_csv(const fs::path& path, const Tiling& tiling) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw DataError("cannot open for writing: " + path.string());
    out << "round,rank_offered,rank_valuable,cost,t_x,t_y\n";
    for (std::size_t i = 0; i < tiling.rank_trace.size(); ++i) {
        const auto& row = tiling.rank_trace[i];
        out << i + 1 << ',' << row.rank_offered << ',' << row.rank_valuable << ','
            << num(row.cost) << ',' << num(row.t_x) << ',' << num(row.t_y) << '\n';
    }
}

json config_snapshot(const PalConfig& cfg, ModelKind kind) {
    return json{{"model", model_kind_name(kind)},
                {"delta_r", cfg.delta_r},
                {"iterations", cfg.iterations},
                {"gamma", cfg.gamma},
                {"thresholds", cfg.thresholds},
                {"stop_slack", cfg.stop_slack},
                {"trace_stride", cfg.trace_stride},
                {"max_rank", cfg.max_rank},
                {"seed", cfg.seed}};
}

json tiling_summary(const Tiling& tiling) {
    json out{{"rank", tiling.x.cols()},
             {"t_x", tiling.t_x},
             {"t_y", tiling.t_y},
             {"rounds", tiling.rank_trace.size()}};
    if (!tiling.rank_trace.empty()) out["cost"] = tiling.rank_trace.back().cost;
    return out;
}

void run_factorize(const FactorizeArgs& a, const std::vector<std::string>& argv) {
    Stopwatch watch;
    const auto [cfg, kind] = resolve_pal_config(a, PalConfig{});
    const fs::path out(a.out);
    fs::create_directories(out);

    const BinaryMatrix d = read_sparse(fs::path(a.data));
    const Tiling tiling = pal_tiling(d, kind, cfg);

    write_sparse(out / "x.txt", tiling.x);
    write_sparse(out / "y.txt", tiling.y);
    write_trace_csv(out / "trace.csv", tiling);

    json entry{{"command", "factorize"},
               {"config", config_snapshot(cfg, kind)},
               {"seed", cfg.seed},
               {"inputs", {{a.data, sha256_file(a.data)}}},
               {"outputs", hash_files(out, {"x.txt", "y.txt", "trace.csv"})},
               {"result", tiling_summary(tiling)}};
    if (!a.config_path.empty()) entry["inputs"][a.config_path] = sha256_file(a.config_path);
    append_manifest(out / "manifest.jsonl", finish_manifest(std::move(entry), watch, argv));
}

struct EvaluateArgs {
    std::string x, y, data, planted_x, planted_y, metadata, metrics;
    std::string run_id = "run";
    std::string model;
    std::uint64_t seed = 0;
    std::size_t rank_offered = 0;
    std::int64_t wall_ms = 0;

    CLI::Option* o_seed = nullptr;
    CLI::Option* o_rank_offered = nullptr;
};

void run_evaluate(const EvaluateArgs& a, const std::vector<std::string>& argv) {
    Stopwatch watch;
    const BinaryMatrix d = read_sparse(fs::path(a.data));
    const BinaryMatrix x = read_sparse(fs::path(a.x));
    const BinaryMatrix y = read_sparse(fs::path(a.y));
    const BinaryMatrix px = read_sparse(fs::path(a.planted_x));
    const BinaryMatrix py = read_sparse(fs::path(a.planted_y));

    json meta = json::object();
    if (!a.metadata.empty()) {
        std::ifstream in(a.metadata, std::ios::binary);
        if (!in)
            throw DataError("cannot open: " + a.metadata);
        std::string line;
        if (!std::getline(in, line))
            throw DataError("metadata file is empty: " + a.metadata);
        meta = json::parse(line, nullptr, false);
        if (meta.is_discarded())
            throw DataError("metadata file is not valid JSON: " + a.metadata);
    }

    const MatchResult match = micro_f(px, py, x, y);
    const double pct_rss = relative_cost(CostKind::rss, x, y, d);
    const double pct_l1 = relative_cost(CostKind::l1, x, y, d);
    const double pct_ct = relative_cost(CostKind::ct, x, y, d);
    const std::size_t rank_valuable = valuable_rank(x, y);
    const std::size_t rank_offered =
        a.o_rank_offered->count() ? a.rank_offered : x.cols();
    const std::uint64_t seed = a.o_seed->count()
                                   ? a.seed
                                   : meta.value("seed", std::uint64_t{0});

    const fs::path metrics(a.metrics);
    if (metrics.has_parent_path()) fs::create_directories(metrics.parent_path());
    const bool fresh = !fs::exists(metrics);
    std::ofstream csv(metrics, std::ios::binary | std::ios::app);
    if (!csv)
        throw DataError("cannot open for writing: " + metrics.string());
    if (fresh)
        csv << "run_id,model,n,m,r_star,q,p_plus,p_minus,seed,rank_offered,rank_valuable,"
               "f_measure,precision,recall,pct_f_rss,pct_f_l1,pct_f_ct,wall_ms\n";
    csv << a.run_id << ',' << a.model << ',' << d.cols() << ',' << d.rows() << ','
        << meta.value("r_star", std::uint64_t{0}) << ',' << num(meta.value("q", 0.0)) << ','
        << num(meta.value("p_plus", 0.0)) << ',' << num(meta.value("p_minus", 0.0)) << ','
        << seed << ',' << rank_offered << ',' << rank_valuable << ','
        << num(match.f_measure) << ',' << num(match.precision) << ',' << num(match.recall)
        << ',' << num(pct_rss) << ',' << num(pct_l1) << ',' << num(pct_ct) << ','
        << a.wall_ms << '\n';
    csv.flush();
    if (!csv)
        throw DataError("write failed: " + metrics.string());

    json inputs{{a.data, sha256_file(a.data)},
                {a.x, sha256_file(a.x)},
                {a.y, sha256_file(a.y)},
                {a.planted_x, sha256_file(a.planted_x)},
                {a.planted_y, sha256_file(a.planted_y)}};
    if (!a.metadata.empty()) inputs[a.metadata] = sha256_file(a.metadata);
    json entry{{"command", "evaluate"},
               {"config",
                {{"run_id", a.run_id},
                 {"model", a.model},
                 {"rank_offered", rank_offered},
                 {"wall_ms", a.wall_ms}}},
               {"seed", seed},
               {"inputs", inputs},
               {"outputs", {{metrics.filename().string(), sha256_file(metrics)}}},
               {"result",
                {{"f_measure", match.f_measure},
                 {"precision", match.precision},
                 {"recall", match.recall},
                 {"rank_valuable", rank_valuable},
                 {"pct_f_rss", pct_rss},
                 {"pct_f_l1", pct_l1},
                 {"pct_f_ct", pct_ct}}}};
    const fs::path manifest_dir =
        metrics.has_parent_path() ? metrics.parent_path() : fs::path(".");
    append_manifest(manifest_dir / "manifest.jsonl",
                    finish_manifest(std::move(entry), watch, argv));
}

struct ImageEncodeArgs {
    std::string in, out;
};

void run_image_encode(const ImageEncodeArgs& a, const std::vector<std::string>& argv) {
    Stopwatch watch;
    const fs::path out(a.out);
    fs::create_directories(out);
    const PatchImage img = tools::read_png(a.in);
    const BinaryMatrix m = encode_image(img);
    write_sparse(out / "data.txt", m);

    json entry{{"command", "image encode"},
               {"config", {{"width", img.width}, {"height", img.height}}},
               {"inputs", {{a.in, sha256_file(a.in)}}},
               {"outputs", hash_files(out, {"data.txt"})}};
    append_manifest(out / "manifest.jsonl", finish_manifest(std::move(entry), watch, argv));
}

struct ImageFactorizeArgs {
    FactorizeArgs base;
    std::string in;
};

void run_image_factorize(const ImageFactorizeArgs& a, const std::vector<std::string>& argv) {
    Stopwatch watch;
    PalConfig defaults;
    defaults.delta_r = 1;
    defaults.max_rank = 10;
    const auto [cfg, kind] = resolve_pal_config(a.base, defaults);
    const fs::path out(a.base.out);
    fs::create_directories(out);

    const PatchImage img = tools::read_png(a.in);
    const BinaryMatrix d = encode_image(img);
    write_sparse(out / "data.txt", d);
    const Tiling tiling = pal_tiling(d, kind, cfg);
    write_sparse(out / "x.txt", tiling.x);
    write_sparse(out / "y.txt", tiling.y);
    write_trace_csv(out / "trace.csv", tiling);

    json entry{{"command", "image factorize"},
               {"config", config_snapshot(cfg, kind)},
               {"seed", cfg.seed},
               {"inputs", {{a.in, sha256_file(a.in)}}},
               {"outputs", hash_files(out, {"data.txt", "x.txt", "y.txt", "trace.csv"})},
               {"result", tiling_summary(tiling)}};
    entry["result"]["width"] = img.width;
    entry["result"]["height"] = img.height;
    if (!a.base.config_path.empty())
        entry["inputs"][a.base.config_path] = sha256_file(a.base.config_path);
    append_manifest(out / "manifest.jsonl", finish_manifest(std::move(entry), watch, argv));
}

struct ImageRenderArgs {
    std::string x, y, out;
    std::size_t width = 0, height = 0, top_k = 4;
};

void run_image_render(const ImageRenderArgs& a, const std::vector<std::string>& argv) {
    Stopwatch watch;
    const fs::path out(a.out);
    fs::create_directories(out);
    const BinaryMatrix x = read_sparse(fs::path(a.x));
    const BinaryMatrix y = read_sparse(fs::path(a.y));
    const RenderResult rendered = render_tiles(x, y, a.width, a.height, a.top_k);

    std::vector<std::string> names;
    for (std::size_t k = 0; k < rendered.tiles.size(); ++k) {
        names.push_back("tile_" + std::to_string(k + 1) + ".png");
        tools::write_png(out / names.back(), rendered.tiles[k]);
    }
    names.emplace_back("reconstruction.png");
    tools::write_png(out / "reconstruction.png", rendered.reconstruction);

    json entry{{"command", "image render"},
               {"config",
                {{"width", a.width}, {"height", a.height}, {"top_k", a.top_k}}},
               {"inputs", {{a.x, sha256_file(a.x)}, {a.y, sha256_file(a.y)}}},
               {"outputs", hash_files(out, names)}};
    append_manifest(out / "manifest.jsonl", finish_manifest(std::move(entry), watch, argv));
}

void add_pal_options(CLI::App* cmd, FactorizeArgs& a) {
    a.o_model = cmd->add_option("--model", a.model, "Cost model: panpal or primp");
    a.o_seed = cmd->add_option("--seed", a.seed, "Random seed (required here or in --config)");
    a.o_delta = cmd->add_option("--delta-r", a.delta_r, "Rank increment per round");
    a.o_iters = cmd->add_option("--iters", a.iters, "Inner iterations per round");
    a.o_gamma = cmd->add_option("--gamma", a.gamma, "Step-size safety factor (> 1)");
    a.o_thresholds =
        cmd->add_option("--thresholds", a.thresholds, "Comma-separated rounding thresholds");
    a.o_slack = cmd->add_option("--stop-slack", a.stop_slack,
                                "Stop once offered rank exceeds valuable rank by more than this");
    a.o_stride = cmd->add_option("--trace-stride", a.trace_stride,
                                 "Iterations between objective trace samples");
    a.o_max_rank = cmd->add_option("--max-rank", a.max_rank,
                                   "Hard cap on the offered rank (0: min(n, m))");
    cmd->add_option("--config", a.config_path, "key=value config file");
    cmd->add_option("--out", a.out, "Output directory")->required();
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::string> raw_args(argv, argv + argc);
    CLI::App app{"Boolean matrix tiling toolkit"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* cmd_gen = app.add_subcommand("generate", "Generate a planted tiling dataset");
    cmd_gen->add_option("--n", gen.n, "Number of items (columns)")->required();
    cmd_gen->add_option("--m", gen.m, "Number of transactions (rows)")->required();
    cmd_gen->add_option("--rank", gen.rank, "Planted rank")->required();
    cmd_gen->add_option("--q", gen.q, "Tile density parameter in (0,1)")->required();
    cmd_gen->add_option("--pplus", gen.pplus, "Probability of flipping a 0 to 1");
    cmd_gen->add_option("--pminus", gen.pminus, "Probability of flipping a 1 to 0");
    cmd_gen->add_option("--seed", gen.seed, "Random seed")->required();
    cmd_gen->add_option("--out", gen.out, "Output directory")->required();
    cmd_gen->callback([&] { run_generate(gen, raw_args); });

    FactorizeArgs fac;
    auto* cmd_fac = app.add_subcommand("factorize", "Factorize a binary matrix into tiles");
    cmd_fac->add_option("data", fac.data, "Sparse-row data file")->required();
    add_pal_options(cmd_fac, fac);
    cmd_fac->callback([&] { run_factorize(fac, raw_args); });

    EvaluateArgs ev;
    auto* cmd_ev = app.add_subcommand("evaluate", "Score a tiling against planted factors");
    cmd_ev->add_option("--x", ev.x, "Computed pattern matrix")->required();
    cmd_ev->add_option("--y", ev.y, "Computed usage matrix")->required();
    cmd_ev->add_option("--data", ev.data, "Sparse-row data file")->required();
    cmd_ev->add_option("--planted-x", ev.planted_x, "Planted pattern matrix")->required();
    cmd_ev->add_option("--planted-y", ev.planted_y, "Planted usage matrix")->required();
    cmd_ev->add_option("--metadata", ev.metadata, "Generator metadata JSON-lines file");
    cmd_ev->add_option("--metrics", ev.metrics, "Metrics CSV to append to")->required();
    cmd_ev->add_option("--run-id", ev.run_id, "Run identifier for the CSV row");
    cmd_ev->add_option("--model", ev.model, "Model name for the CSV row");
    ev.o_seed = cmd_ev->add_option("--seed", ev.seed,
                                   "Seed column value (default: metadata seed)");
    ev.o_rank_offered = cmd_ev->add_option("--rank-offered", ev.rank_offered,
                                           "Offered rank column value (default: columns of X)");
    cmd_ev->add_option("--wall-ms", ev.wall_ms, "Wall-clock column value");
    cmd_ev->callback([&] { run_evaluate(ev, raw_args); });

    auto* cmd_img = app.add_subcommand("image", "Image patch experiments");
    cmd_img->require_subcommand(1);

    ImageEncodeArgs enc;
    auto* cmd_enc = cmd_img->add_subcommand("encode", "Encode a PNG as a binary matrix");
    cmd_enc->add_option("--in", enc.in, "Input PNG (dimensions divisible by 4)")->required();
    cmd_enc->add_option("--out", enc.out, "Output directory")->required();
    cmd_enc->callback([&] { run_image_encode(enc, raw_args); });

    ImageFactorizeArgs ifa;
    auto* cmd_ifa = cmd_img->add_subcommand("factorize", "Encode and factorize a PNG");
    cmd_ifa->add_option("--in", ifa.in, "Input PNG (dimensions divisible by 4)")->required();
    add_pal_options(cmd_ifa, ifa.base);
    cmd_ifa->callback([&] { run_image_factorize(ifa, raw_args); });

    ImageRenderArgs ren;
    auto* cmd_ren = cmd_img->add_subcommand("render", "Render tiles back to PNG images");
    cmd_ren->add_option("--x", ren.x, "Pattern matrix")->required();
    cmd_ren->add_option("--y", ren.y, "Usage matrix")->required();
    cmd_ren->add_option("--width", ren.width, "Original image width")->required();
    cmd_ren->add_option("--height", ren.height, "Original image height")->required();
    cmd_ren->add_option("--top-k", ren.top_k, "Number of tiles to render");
    cmd_ren->add_option("--out", ren.out, "Output directory")->required();
    cmd_ren->callback([&] { run_image_render(ren, raw_args); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
