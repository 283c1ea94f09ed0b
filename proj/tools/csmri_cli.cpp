#include <CLI11.hpp>

#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "csmri/io.hpp"
#include "csmri/masks.hpp"
#include "csmri/metrics.hpp"
#include "csmri/phantom.hpp"
#include "csmri/rician.hpp"
#include "csmri/solver.hpp"

namespace {

using namespace csmri;

SamplingMask load_mask(const std::filesystem::path& path) {
    RealImage img = read_rimg_real(path);
    std::vector<std::uint8_t> ind(img.size());
    for (std::size_t i = 0; i < img.size(); ++i) ind[i] = img.data[i] > 0.5 ? 1 : 0;
    return SamplingMask(img.height, img.width, std::move(ind));
}

void save_mask(const std::filesystem::path& path, const SamplingMask& mask) {
    RealImage img(mask.height, mask.width);
    for (std::size_t i = 0; i < img.size(); ++i)
        img.data[i] = mask.indicator[i] ? 1.0 : 0.0;
    write_rimg(path, img);
}

Denoiser denoiser_from_config(const ExperimentConfig& cfg, const std::string& override_name) {
    DenoiserOptions opts;
    opts.param = cfg.denoiser_param;
    opts.seed = cfg.seed;
    opts.spec = cfg.solver.wavelet_spec();
    return make_denoiser(override_name.empty() ? cfg.denoiser : override_name, opts);
}

// Returns the recon exit code: 0 converged, 2 hit max_iters.
int run_recon_job(const std::filesystem::path& y_path, const std::filesystem::path& mask_path,
                  const std::filesystem::path& cfg_path, const std::string& denoiser_name,
                  const std::string& variant_name, const std::filesystem::path& out_path,
                  const std::filesystem::path& trace_path) {
    ExperimentConfig cfg = parse_config(cfg_path);
    ComplexImage y = read_rimg_complex(y_path, Domain::kspace);
    SamplingMask mask = load_mask(mask_path);
    Denoiser denoiser = denoiser_from_config(cfg, denoiser_name);
    Variant variant = parse_variant(variant_name.empty() ? "full" : variant_name);
    SolveResult res = solve(y, mask, cfg.solver, denoiser, variant);
    write_rimg(out_path, res.x_star);
    if (!trace_path.empty()) write_trace_csv(trace_path, res.trace);
    return res.converged ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Compressive-sensing MRI reconstruction toolkit"};
    app.require_subcommand(1);

    // phantom
    auto* cmd_phantom = app.add_subcommand("phantom", "Generate a synthetic test image");
    std::size_t ph_size = 64;
    std::string ph_kind = "shepp-logan", ph_out;
    cmd_phantom->add_option("--size", ph_size, "power-of-two size >= 32");
    cmd_phantom->add_option("--kind", ph_kind, "shepp-logan | blocks");
    cmd_phantom->add_option("--out", ph_out)->required();

    // mask
    auto* cmd_mask = app.add_subcommand("mask", "Generate an undersampling mask");
    std::string mk_type = "radial", mk_out;
    std::size_t mk_h = 64, mk_w = 64;
    double mk_ratio = 0.3;
    std::uint64_t mk_seed = 0;
    cmd_mask->add_option("--type", mk_type, "cartesian | radial | gaussian");
    cmd_mask->add_option("--height", mk_h);
    cmd_mask->add_option("--width", mk_w);
    cmd_mask->add_option("--ratio", mk_ratio)->required();
    cmd_mask->add_option("--seed", mk_seed);
    cmd_mask->add_option("--out", mk_out)->required();

    // corrupt
    auto* cmd_corrupt = app.add_subcommand("corrupt", "Undersample an image into k-space data");
    std::string co_image, co_mask, co_out;
    double co_sigma = 0.0;
    std::uint64_t co_seed = 0;
    cmd_corrupt->add_option("--image", co_image)->required();
    cmd_corrupt->add_option("--mask", co_mask)->required();
    cmd_corrupt->add_option("--rician-sigma", co_sigma, "add Rician noise before sampling");
    cmd_corrupt->add_option("--seed", co_seed);
    cmd_corrupt->add_option("--out", co_out)->required();

    // recon
    auto* cmd_recon = app.add_subcommand("recon", "Reconstruct from undersampled k-space");
    std::string rc_y, rc_mask, rc_cfg, rc_den, rc_out, rc_trace, rc_variant = "full";
    cmd_recon->add_option("--y", rc_y)->required();
    cmd_recon->add_option("--mask", rc_mask)->required();
    cmd_recon->add_option("--config", rc_cfg)->required();
    cmd_recon->add_option("--denoiser", rc_den, "overrides the config denoiser");
    cmd_recon->add_option("--out", rc_out)->required();
    cmd_recon->add_option("--trace", rc_trace);
    cmd_recon->add_option("--variant", rc_variant, "P | FN | FNP | full");

    // rician-sim
    auto* cmd_rsim = app.add_subcommand("rician-sim", "Apply Rician noise to a magnitude image");
    std::string rs_image, rs_out;
    double rs_sigma = 0.05;
    std::uint64_t rs_seed = 0;
    cmd_rsim->add_option("--image", rs_image)->required();
    cmd_rsim->add_option("--sigma", rs_sigma)->required();
    cmd_rsim->add_option("--seed", rs_seed);
    cmd_rsim->add_option("--out", rs_out)->required();

    // rician-recon
    auto* cmd_rrec = app.add_subcommand("rician-recon", "Rician-robust reconstruction");
    std::string rr_y, rr_mask, rr_cfg, rr_out, rr_trace;
    cmd_rrec->add_option("--y", rr_y)->required();
    cmd_rrec->add_option("--mask", rr_mask)->required();
    cmd_rrec->add_option("--config", rr_cfg)->required();
    cmd_rrec->add_option("--out", rr_out)->required();
    cmd_rrec->add_option("--trace", rr_trace);

    // metrics
    auto* cmd_metrics = app.add_subcommand("metrics", "PSNR / MSE / RLNE of a reconstruction");
    std::string mt_ref, mt_rec;
    double mt_peak = 0.0;
    cmd_metrics->add_option("--ref", mt_ref)->required();
    cmd_metrics->add_option("--rec", mt_rec)->required();
    cmd_metrics->add_option("--peak", mt_peak, "PSNR peak (default: max of ref)");

    // batch
    auto* cmd_batch = app.add_subcommand("batch", "Run reconstructions in parallel");
    std::string bt_spec;
    std::size_t bt_jobs = std::thread::hardware_concurrency();
    cmd_batch->add_option("--spec", bt_spec, "file with lines: y mask config out trace [variant]")
        ->required();
    cmd_batch->add_option("--jobs", bt_jobs);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cmd_phantom) {
            write_rimg(ph_out, phantom(ph_size, ph_kind));
        } else if (*cmd_mask) {
            save_mask(mk_out, make_mask(mk_type, mk_h, mk_w, mk_ratio, mk_seed));
        } else if (*cmd_corrupt) {
            RealImage img = read_real_image(co_image);
            SamplingMask mask = load_mask(co_mask);
            if (co_sigma > 0.0) {
                RicianParams rp{co_sigma, co_seed};
                write_rimg(co_out, corrupt(img, mask, &rp));
            } else {
                write_rimg(co_out, corrupt(img, mask));
            }
        } else if (*cmd_recon) {
            return run_recon_job(rc_y, rc_mask, rc_cfg, rc_den, rc_variant, rc_out, rc_trace);
        } else if (*cmd_rsim) {
            write_rimg(rs_out, add_rician(read_real_image(rs_image), RicianParams{rs_sigma, rs_seed}));
        } else if (*cmd_rrec) {
            ExperimentConfig cfg = parse_config(rr_cfg);
            ComplexImage y = read_rimg_complex(rr_y, Domain::kspace);
            SamplingMask mask = load_mask(rr_mask);
            Denoiser inner = denoiser_from_config(cfg, "");
            Denoiser remover = make_rician_remover(cfg.rician.sigma, inner);
            SolveResult res = solve_rician(y, mask, cfg.rician, remover, inner);
            write_rimg(rr_out, res.x_star);
            if (!rr_trace.empty()) write_trace_csv(rr_trace, res.trace);
            return res.converged ? 0 : 2;
        } else if (*cmd_metrics) {
            RealImage ref = read_real_image(mt_ref);
            LoadedImage rec = read_rimg(mt_rec);
            RealImage rec_mag = rec.is_complex ? magnitude(rec.complex) : rec.real;
            char buf[160];
            std::snprintf(buf, sizeof(buf), "psnr=%.6f\nmse=%.12g\nrlne=%.12g\n",
                          psnr(ref, rec_mag, mt_peak), mse(ref, rec_mag), rlne(ref, rec_mag));
            std::cout << buf;
        } else if (*cmd_batch) {
            std::ifstream spec(bt_spec);
            if (!spec) throw std::runtime_error("cannot open batch spec '" + bt_spec + "'");
            struct Job {
                std::string y, mask, cfg, out, trace, variant;
            };
            std::vector<Job> jobs;
            std::string line;
            while (std::getline(spec, line)) {
                std::istringstream ls(line);
                Job j;
                if (!(ls >> j.y >> j.mask >> j.cfg >> j.out >> j.trace)) continue;
                ls >> j.variant;
                jobs.push_back(std::move(j));
            }
            std::atomic<std::size_t> next{0};
            std::atomic<int> failures{0};
            auto worker = [&] {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= jobs.size()) return;
                    const Job& j = jobs[i];
                    try {
                        run_recon_job(j.y, j.mask, j.cfg, "", j.variant, j.out, j.trace);
                    } catch (const std::exception& e) {
                        std::cerr << "batch job " << i << " failed: " << e.what() << "\n";
                        failures.fetch_add(1);
                    }
                }
            };
            std::vector<std::thread> pool;
            for (std::size_t t = 0; t < std::max<std::size_t>(1, bt_jobs); ++t)
                pool.emplace_back(worker);
            for (auto& th : pool) th.join();
            if (failures.load() > 0) return 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
