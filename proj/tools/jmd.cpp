/*
 * jmd — command-line interface.
 *
 * Subcommands:
 *   decompose   run JMD (or MJMD for multichannel input, or the
 *               jump-disabled VMD/MVMD baseline with --no-jump) on a
 *               CSV signal and write modes/jump/residual/omegas plus a
 *               rerunnable manifest
 *   synth       generate benchmark signals with exact ground truth
 *   eval        score a decomposition against ground truth
 *   plot        emit per-component SVG panels
 *
 * A manifest written by decompose is a valid --config file, so
 *   jmd decompose --config run/manifest.txt --output rerun
 * reproduces the numeric outputs byte for byte.
 */

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "jmd/jmd.hpp"

namespace fs = std::filesystem;

namespace {

std::string channel_header(const jmd::Signal& sig, std::size_t c) {
    if (c < sig.labels.size() && !sig.labels[c].empty()) return sig.labels[c];
    return "ch" + std::to_string(c + 1);
}

void write_component_csv(const std::string& path, const std::vector<std::vector<double>>& by_channel,
                         const jmd::Signal& sig) {
    std::vector<std::string> header;
    for (std::size_t c = 0; c < by_channel.size(); ++c) header.push_back(channel_header(sig, c));
    jmd::write_csv(path, by_channel, header);
}

std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

// ---------------------------------------------------------------- decompose

struct DecomposeArgs {
    std::string input;
    std::string output;
    int k = 0;
    double alpha = 0.0;
    double beta = 0.0;
    double bbar = 0.3;
    double tau1 = 0.0;
    double tau2 = 10.0;
    double eps = 1e-7;
    int max_iter = 500;
    std::string init = "zeros";
    std::uint64_t seed = 0;
    bool no_jump = false;
};

int run_decompose(const DecomposeArgs& a) {
    const jmd::Signal sig = jmd::signal_from_csv(jmd::read_csv(a.input));

    jmd::DecompConfig cfg;
    cfg.k = a.k;
    cfg.alpha = a.alpha;
    cfg.beta = a.beta;
    cfg.b_bar = a.bbar;
    cfg.tau1 = a.tau1;
    cfg.tau2 = a.tau2;
    cfg.eps = a.eps;
    cfg.max_iter = a.max_iter;
    cfg.omega_init = jmd::omega_init_from_string(a.init);
    cfg.seed = a.seed;
    const jmd::ValidatedConfig vcfg = jmd::validate_config(cfg, sig);

    jmd::DecompositionResult res;
    if (a.no_jump)
        res = jmd::decompose_vmd(sig, vcfg);
    else if (sig.channel_count() == 1)
        res = jmd::decompose(sig, vcfg);
    else
        res = jmd::decompose_mv(sig, vcfg);

    fs::create_directories(a.output);
    const fs::path out(a.output);

    for (std::size_t k = 0; k < res.modes.size(); ++k)
        write_component_csv((out / ("mode_" + std::to_string(k + 1) + ".csv")).string(),
                            res.modes[k], sig);
    write_component_csv((out / "jump.csv").string(), res.jump, sig);
    write_component_csv((out / "residual.csv").string(), res.residual, sig);

    jmd::write_csv((out / "omegas.csv").string(),
                   {res.omegas, res.omegas_hz(sig.sample_rate)},
                   {"omega_normalized", "omega_hz"});
    if (!res.convergence_trace.empty())
        jmd::write_csv((out / "trace.csv").string(), {res.convergence_trace}, {"rel_change"});

    const double final_change =
        res.convergence_trace.empty() ? std::numeric_limits<double>::quiet_NaN()
                                      : res.convergence_trace.back();
    jmd::write_manifest(
        (out / "manifest.txt").string(),
        {{"timestamp", iso_timestamp()},
         {"channels", std::to_string(sig.channel_count())},
         {"samples", std::to_string(sig.length())},
         {"sample_rate", jmd::format_g17(sig.sample_rate)},
         {"converged", res.converged ? "true" : "false"},
         {"iterations", std::to_string(res.iterations)},
         {"final_rel_change", jmd::format_g17(final_change)}},
        {{"input", fs::absolute(a.input).string()},
         {"k", std::to_string(a.k)},
         {"alpha", jmd::format_g17(a.alpha)},
         {"beta", jmd::format_g17(a.beta)},
         {"bbar", jmd::format_g17(a.bbar)},
         {"tau1", jmd::format_g17(a.tau1)},
         {"tau2", jmd::format_g17(a.tau2)},
         {"eps", jmd::format_g17(a.eps)},
         {"max-iter", std::to_string(a.max_iter)},
         {"init", a.init},
         {"seed", std::to_string(a.seed)},
         {"no-jump", a.no_jump ? "true" : "false"}});

    if (!res.converged)
        std::cerr << "warning: not converged after " << res.iterations
                  << " iterations (flagged in manifest)\n";
    std::cout << "wrote " << res.modes.size() << " modes + jump + residual to " << a.output
              << " (iterations=" << res.iterations << ", converged=" << std::boolalpha
              << res.converged << ")\n";
    return 0;
}

// -------------------------------------------------------------------- synth

struct SynthArgs {
    std::string example;
    std::string output;
    std::size_t n = 1000;
    std::uint64_t seed = 0;
    double sigma = 0.1;
};

void write_truth(const fs::path& out, const jmd::Signal& sig, const jmd::GroundTruth& gt) {
    // signal.csv carries a time column so sample rate survives the round trip
    std::vector<std::vector<double>> cols;
    std::vector<std::string> header{"time"};
    std::vector<double> time(sig.length());
    for (std::size_t i = 0; i < time.size(); ++i)
        time[i] = static_cast<double>(i) / sig.sample_rate;
    cols.push_back(std::move(time));
    for (std::size_t c = 0; c < sig.channel_count(); ++c) {
        cols.push_back(sig.channels[c]);
        header.push_back(channel_header(sig, c));
    }
    jmd::write_csv((out / "signal.csv").string(), cols, header);

    for (const auto& comp : gt.components)
        write_component_csv((out / (comp.name + ".csv")).string(), comp.data, sig);

    std::vector<double> idx, height;
    for (const auto& [i, h] : gt.jump_edges) {
        idx.push_back(static_cast<double>(i));
        height.push_back(h);
    }
    if (idx.empty()) {
        idx.push_back(std::numeric_limits<double>::quiet_NaN());
        height.push_back(std::numeric_limits<double>::quiet_NaN());
        idx.clear();
        height.clear();
    }
    if (!gt.jump_edges.empty())
        jmd::write_csv((out / "edges.csv").string(), {idx, height}, {"index", "height"});
}

int run_synth(const SynthArgs& a) {
    fs::create_directories(a.output);
    const fs::path out(a.output);

    jmd::Signal sig;
    jmd::GroundTruth gt;
    if (a.example == "example1") {
        std::tie(sig, gt) = jmd::gen_example1(a.n, a.seed, a.sigma);
    } else if (a.example == "example2") {
        std::tie(sig, gt) = jmd::gen_example2(a.n, a.seed, a.sigma);
    } else if (a.example == "step") {
        gt.jump_edges = {{a.n / 2, 1.5}};
        auto step = jmd::gen_step_train(a.n, gt.jump_edges);
        gt.components.push_back({"jump", {step}});
        sig.channels = {std::move(step)};
        sig.sample_rate = static_cast<double>(a.n);
    } else if (a.example == "tones") {
        std::tie(sig, gt) = jmd::gen_tones(a.n, a.seed, {10.0, 35.0}, {1.0, 1.0}, a.sigma);
    } else {
        std::cerr << "error: unknown generator '" << a.example
                  << "' (expected example1|example2|step|tones)\n";
        return 1;
    }
    write_truth(out, sig, gt);
    std::cout << "wrote " << sig.channel_count() << "-channel signal (" << sig.length()
              << " samples) and ground truth to " << a.output << "\n";
    return 0;
}

// --------------------------------------------------------------------- eval

std::vector<std::vector<double>> read_component(const fs::path& path) {
    if (!fs::exists(path))
        throw std::runtime_error("missing file: " + path.string());
    return jmd::read_csv(path.string()).columns;
}

int run_eval(const std::string& decomp_dir, const std::string& truth_dir) {
    const fs::path dd(decomp_dir), td(truth_dir);

    // decomposition
    const auto omegas_cols = read_component(dd / "omegas.csv");
    const std::size_t kk = omegas_cols.front().size();
    std::vector<std::vector<std::vector<double>>> modes;  // K x C x N
    for (std::size_t k = 0; k < kk; ++k)
        modes.push_back(read_component(dd / ("mode_" + std::to_string(k + 1) + ".csv")));
    const auto jump = read_component(dd / "jump.csv");
    const auto residual = read_component(dd / "residual.csv");
    const std::size_t cc = jump.size();
    const std::size_t n = jump.front().size();

    // ground truth tone components
    struct Tone {
        double freq;
        std::vector<std::vector<double>> data;
    };
    std::vector<Tone> tones;
    for (const auto& entry : fs::directory_iterator(td)) {
        const std::string name = entry.path().filename().string();
        if (name.rfind("tone_", 0) == 0 && name.size() > 7 &&
            name.substr(name.size() - 6) == "hz.csv") {
            const double freq = std::stod(name.substr(5, name.size() - 11));
            tones.push_back({freq, read_component(entry.path())});
        }
    }
    std::sort(tones.begin(), tones.end(),
              [](const Tone& a, const Tone& b) { return a.freq < b.freq; });
    if (tones.empty()) throw std::runtime_error("no tone_*hz.csv ground truth in " + truth_dir);
    for (const auto& t : tones)
        if (t.data.size() != cc || t.data.front().size() != n)
            throw std::runtime_error("shape mismatch between decomposition and truth");

    // greedy best-match assignment by mean |corr| over channels where present
    auto score = [&](std::size_t k, const Tone& t) {
        double acc = 0.0;
        int cnt = 0;
        for (std::size_t c = 0; c < cc; ++c) {
            double e = 0.0;
            for (double v : t.data[c]) e += v * v;
            if (e == 0.0) continue;  // tone absent in this channel
            acc += std::abs(jmd::component_correlation(modes[k][c], t.data[c]));
            ++cnt;
        }
        return cnt ? acc / cnt : 0.0;
    };
    std::set<std::size_t> free_modes;
    for (std::size_t k = 0; k < kk; ++k) free_modes.insert(k);
    std::set<std::size_t> free_tones;
    for (std::size_t t = 0; t < tones.size(); ++t) free_tones.insert(t);
    std::vector<std::pair<std::size_t, std::size_t>> assignment;  // (mode, tone)
    while (!free_modes.empty() && !free_tones.empty()) {
        double best = -1.0;
        std::pair<std::size_t, std::size_t> arg{};
        for (std::size_t k : free_modes)
            for (std::size_t t : free_tones) {
                const double s = score(k, tones[t]);
                if (s > best) {
                    best = s;
                    arg = {k, t};
                }
            }
        assignment.push_back(arg);
        free_modes.erase(arg.first);
        free_tones.erase(arg.second);
    }
    std::sort(assignment.begin(), assignment.end(),
              [&](auto a, auto b) { return tones[a.second].freq < tones[b.second].freq; });

    std::printf("%-10s %-10s %-12s %s\n", "mode", "tone_hz", "omega_hz", "corr(by channel)");
    for (const auto& [k, t] : assignment) {
        std::string cors;
        for (std::size_t c = 0; c < cc; ++c) {
            double e = 0.0;
            for (double v : tones[t].data[c]) e += v * v;
            if (e == 0.0) {
                cors += " -";
                continue;
            }
            char buf[16];
            std::snprintf(buf, sizeof(buf), " %.4f",
                          jmd::component_correlation(modes[k][c], tones[t].data[c]));
            cors += buf;
        }
        std::printf("mode_%-5zu %-10g %-12g%s\n", k + 1, tones[t].freq,
                    omegas_cols[1][k], cors.c_str());
    }

    // jump edge localization (threshold: bbar/2 from the manifest, else 0.15)
    double bbar = 0.3;
    const fs::path manifest = dd / "manifest.txt";
    if (fs::exists(manifest))
        for (const auto& [key, val] : jmd::read_manifest(manifest.string()))
            if (key == "bbar") bbar = std::stod(val);
    const fs::path edges_path = td / "edges.csv";
    if (fs::exists(edges_path)) {
        const auto truth_edges = read_component(edges_path);
        for (std::size_t c = 0; c < cc; ++c) {
            const auto detected = jmd::jump_edges(jump[c], bbar / 2.0);
            for (std::size_t e = 0; e < truth_edges[0].size(); ++e) {
                const auto target = static_cast<long>(truth_edges[0][e]);
                long err = -1;
                for (const auto& [idx, h] : detected) {
                    const long d = std::labs(static_cast<long>(idx) - target);
                    if (err < 0 || d < err) err = d;
                }
                std::printf("jump edge @%ld ch%zu: localization error = %ld samples%s\n",
                            target, c + 1, err, err < 0 ? " (no edge detected)" : "");
            }
        }
    }

    for (std::size_t c = 0; c < cc; ++c) {
        double acc = 0.0;
        for (double v : residual[c]) acc += v * v;
        std::printf("residual rms ch%zu: %.6g\n", c + 1, std::sqrt(acc / static_cast<double>(n)));
    }

    const fs::path noise_path = td / "noise.csv";
    const fs::path signal_path = td / "signal.csv";
    if (fs::exists(noise_path) && fs::exists(signal_path)) {
        const auto noise = read_component(noise_path);
        const jmd::Signal in_sig = jmd::signal_from_csv(jmd::read_csv(signal_path.string()));
        for (std::size_t c = 0; c < cc && c < noise.size(); ++c) {
            std::vector<double> clean(n);
            for (std::size_t i = 0; i < n; ++i) clean[i] = in_sig.channels[c][i] - noise[c][i];
            std::printf("input snr ch%zu: %.3f dB\n", c + 1, jmd::snr_db(clean, noise[c]));
        }
    }
    return 0;
}

// --------------------------------------------------------------------- plot

void write_svg(const fs::path& path, const std::vector<std::vector<double>>& channels,
               const std::string& title, bool normalize) {
    const int width = 900, height = 240, pad = 30;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string());

    double lo = 0.0, hi = 1.0;
    if (!normalize) {
        lo = channels[0][0];
        hi = channels[0][0];
        for (const auto& ch : channels)
            for (double v : ch) {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        if (hi == lo) hi = lo + 1.0;
    }

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << pad << "\" y=\"18\" font-family=\"sans-serif\" font-size=\"13\">"
        << title << "</text>\n";

    const char* colors[] = {"#c0392b", "#2471a3", "#1e8449", "#8e44ad", "#b7950b", "#5d6d7e"};
    for (std::size_t c = 0; c < channels.size(); ++c) {
        const auto& ch = channels[c];
        double clo = lo, chi = hi;
        if (normalize) {
            clo = ch[0];
            chi = ch[0];
            for (double v : ch) {
                clo = std::min(clo, v);
                chi = std::max(chi, v);
            }
            if (chi == clo) chi = clo + 1.0;
        }
        out << "<polyline fill=\"none\" stroke=\"" << colors[c % 6]
            << "\" stroke-width=\"0.8\" points=\"";
        const std::size_t n = ch.size();
        for (std::size_t i = 0; i < n; ++i) {
            const double x = pad + (width - 2.0 * pad) * static_cast<double>(i) /
                                       static_cast<double>(n - 1);
            const double ynorm = (ch[i] - clo) / (chi - clo);
            const double y = (height - pad) - (height - 2.0 * pad) * ynorm;
            char buf[48];
            std::snprintf(buf, sizeof(buf), "%.1f,%.1f ", x, y);
            out << buf;
        }
        out << "\"/>\n";
    }
    out << "</svg>\n";
}

int run_plot(const std::string& input_dir, const std::string& output_dir, bool normalize) {
    const fs::path dd(input_dir);
    fs::create_directories(output_dir);
    const fs::path od(output_dir);
    int written = 0;

    // source signal, when the manifest still points at a readable file
    const fs::path manifest = dd / "manifest.txt";
    if (fs::exists(manifest)) {
        for (const auto& [key, val] : jmd::read_manifest(manifest.string())) {
            if (key == "input" && fs::exists(val)) {
                const jmd::Signal sig = jmd::signal_from_csv(jmd::read_csv(val));
                write_svg(od / "signal.svg", sig.channels, "input signal", normalize);
                ++written;
            }
        }
    }

    for (std::size_t k = 1;; ++k) {
        const fs::path p = dd / ("mode_" + std::to_string(k) + ".csv");
        if (!fs::exists(p)) break;
        write_svg(od / ("mode_" + std::to_string(k) + ".svg"), jmd::read_csv(p.string()).columns,
                  "mode " + std::to_string(k), normalize);
        ++written;
    }

    for (const char* name : {"jump", "residual"}) {
        const fs::path p = dd / (std::string(name) + ".csv");
        if (!fs::exists(p) || fs::file_size(p) == 0) {
            std::cerr << "warning: " << name << ".csv missing or empty, plot omitted\n";
            continue;
        }
        write_svg(od / (std::string(name) + ".svg"), jmd::read_csv(p.string()).columns, name,
                  normalize);
        ++written;
    }

    std::cout << "wrote " << written << " svg files to " << output_dir << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"jump plus AM-FM mode decomposition"};
    app.require_subcommand(1);

    DecomposeArgs da;
    CLI::App* dec = app.add_subcommand("decompose", "decompose a CSV signal");
    dec->set_config("--config");
    dec->allow_config_extras(true);
    dec->add_option("--input", da.input, "input CSV (channels in columns)")->required();
    dec->add_option("--output", da.output, "output directory")->required();
    dec->add_option("--k", da.k, "number of modes")->required();
    dec->add_option("--alpha", da.alpha, "bandwidth weight")->required();
    dec->add_option("--beta", da.beta, "jump regularization")->required();
    dec->add_option("--bbar", da.bbar, "minimal expected jump height");
    dec->add_option("--tau1", da.tau1, "reconstruction ascent rate in [0,1]");
    dec->add_option("--tau2", da.tau2, "convexity margin (> 1)");
    dec->add_option("--eps", da.eps, "convergence tolerance");
    dec->add_option("--max-iter", da.max_iter, "iteration cap");
    dec->add_option("--init", da.init, "omega init: zeros|uniform|random");
    dec->add_option("--seed", da.seed, "seed for random init");
    dec->add_flag("--no-jump", da.no_jump, "disable the jump branch (VMD/MVMD baseline)");

    SynthArgs sa;
    CLI::App* syn = app.add_subcommand("synth", "generate a benchmark signal");
    syn->add_option("--example", sa.example, "example1|example2|step|tones")->required();
    syn->add_option("--output", sa.output, "output directory")->required();
    syn->add_option("--n", sa.n, "samples over t in [0,1]");
    syn->add_option("--seed", sa.seed, "noise seed");
    syn->add_option("--sigma", sa.sigma, "noise standard deviation");

    std::string eval_decomp, eval_truth;
    CLI::App* ev = app.add_subcommand("eval", "score a decomposition against ground truth");
    ev->add_option("decomposition", eval_decomp, "decomposition output directory")->required();
    ev->add_option("truth", eval_truth, "ground-truth directory (from synth)")->required();

    std::string plot_in, plot_out;
    bool plot_norm = false;
    CLI::App* pl = app.add_subcommand("plot", "emit SVG panels for a decomposition");
    pl->add_option("--input", plot_in, "decomposition output directory")->required();
    pl->add_option("--output", plot_out, "plot directory")->required();
    pl->add_flag("--normalize", plot_norm, "min-max scale each panel to [0,1]");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*dec) return run_decompose(da);
        if (*syn) return run_synth(sa);
        if (*ev) return run_eval(eval_decomp, eval_truth);
        if (*pl) return run_plot(plot_in, plot_out, plot_norm);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
