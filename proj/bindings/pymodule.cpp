#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "csmri/io.hpp"
#include "csmri/masks.hpp"
#include "csmri/metrics.hpp"
#include "csmri/phantom.hpp"
#include "csmri/rician.hpp"
#include "csmri/solver.hpp"

namespace py = pybind11;
using namespace csmri;

namespace {

RealImage real_from_array(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 2) throw ShapeError("expected a 2-D array");
    const auto h = static_cast<std::size_t>(a.shape(0));
    const auto w = static_cast<std::size_t>(a.shape(1));
    std::vector<double> data(a.data(), a.data() + h * w);
    return RealImage(h, w, std::move(data));
}

ComplexImage complex_from_array(
    const py::array_t<cplx, py::array::c_style | py::array::forcecast>& a, Domain dom) {
    if (a.ndim() != 2) throw ShapeError("expected a 2-D array");
    const auto h = static_cast<std::size_t>(a.shape(0));
    const auto w = static_cast<std::size_t>(a.shape(1));
    std::vector<cplx> data(a.data(), a.data() + h * w);
    return ComplexImage(h, w, std::move(data), dom);
}

SamplingMask mask_from_array(
    const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 2) throw ShapeError("expected a 2-D array");
    const auto h = static_cast<std::size_t>(a.shape(0));
    const auto w = static_cast<std::size_t>(a.shape(1));
    std::vector<std::uint8_t> ind(a.data(), a.data() + h * w);
    return SamplingMask(h, w, std::move(ind));
}

py::array_t<double> to_array(const RealImage& img) {
    py::array_t<double> out({img.height, img.width});
    std::copy(img.data.begin(), img.data.end(), out.mutable_data());
    return out;
}

py::array_t<cplx> to_array(const ComplexImage& img) {
    py::array_t<cplx> out({img.height, img.width});
    std::copy(img.data.begin(), img.data.end(), out.mutable_data());
    return out;
}

py::array_t<cplx> to_array(const SparseCode& code) {
    py::array_t<cplx> out({code.height, code.width});
    std::copy(code.data.begin(), code.data.end(), out.mutable_data());
    return out;
}

SolverConfig config_from_kwargs(const py::dict& kw) {
    std::string text;
    for (auto item : kw) {
        text += py::str(item.first).cast<std::string>();
        text += " = ";
        text += py::str(item.second).cast<std::string>();
        text += "\n";
    }
    return parse_config_text(text).solver;
}

py::dict trace_to_dict(const IterateTrace& trace) {
    std::vector<std::size_t> k;
    std::vector<double> phi, phi_w, step_norm, c_k, rel_change;
    std::vector<bool> accepted;
    for (const TraceRow& r : trace) {
        k.push_back(r.k);
        phi.push_back(r.phi);
        phi_w.push_back(r.phi_w);
        accepted.push_back(r.accepted);
        step_norm.push_back(r.step_norm);
        c_k.push_back(r.c_k);
        rel_change.push_back(r.rel_change);
    }
    py::dict d;
    d["k"] = k;
    d["phi"] = phi;
    d["phi_w"] = phi_w;
    d["accepted"] = accepted;
    d["step_norm"] = step_norm;
    d["c_k"] = c_k;
    d["rel_change"] = rel_change;
    return d;
}

py::dict result_to_dict(const SolveResult& res) {
    py::dict d;
    d["alpha"] = to_array(res.alpha_star);
    d["x"] = to_array(res.x_star);
    d["iterations"] = res.iterations_used;
    d["converged"] = res.converged;
    d["trace"] = trace_to_dict(res.trace);
    if (!res.rician_mismatch.empty()) d["rician_mismatch"] = res.rician_mismatch;
    return d;
}

} // namespace

PYBIND11_MODULE(_csmri, m) {
    m.doc() = "Compressive-sensing MRI reconstruction core";

    py::register_exception<ShapeError>(m, "ShapeError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<DescentViolation>(m, "DescentViolation", PyExc_RuntimeError);

    m.def("phantom",
          [](std::size_t size, const std::string& kind) { return to_array(phantom(size, kind)); },
          py::arg("size"), py::arg("kind") = "shepp-logan");

    m.def("make_mask",
          [](const std::string& type, std::size_t h, std::size_t w, double ratio,
             std::uint64_t seed) {
              SamplingMask mask = make_mask(type, h, w, ratio, seed);
              py::array_t<std::uint8_t> out({mask.height, mask.width});
              std::copy(mask.indicator.begin(), mask.indicator.end(), out.mutable_data());
              return out;
          },
          py::arg("type"), py::arg("height"), py::arg("width"), py::arg("ratio"),
          py::arg("seed") = 0);

    m.def("fft_centered",
          [](const py::array_t<cplx, py::array::c_style | py::array::forcecast>& x) {
              return to_array(fft_centered(complex_from_array(x, Domain::image)));
          });
    m.def("ifft_centered",
          [](const py::array_t<cplx, py::array::c_style | py::array::forcecast>& x) {
              return to_array(ifft_centered(complex_from_array(x, Domain::kspace)));
          });
    m.def("wavelet_analyze",
          [](const py::array_t<cplx, py::array::c_style | py::array::forcecast>& x,
             const std::string& family, std::size_t levels) {
              WaveletSpec spec{family == "haar" ? WaveletFamily::haar : WaveletFamily::db4,
                               levels};
              if (family != "haar" && family != "db4")
                  throw ConfigError("unknown wavelet family '" + family + "'");
              return to_array(wavelet_analyze(complex_from_array(x, Domain::image), spec));
          },
          py::arg("x"), py::arg("family") = "db4", py::arg("levels") = 3);
    m.def("wavelet_synthesize",
          [](const py::array_t<cplx, py::array::c_style | py::array::forcecast>& a,
             const std::string& family, std::size_t levels) {
              WaveletSpec spec{family == "haar" ? WaveletFamily::haar : WaveletFamily::db4,
                               levels};
              if (family != "haar" && family != "db4")
                  throw ConfigError("unknown wavelet family '" + family + "'");
              SparseCode code(static_cast<std::size_t>(a.shape(0)),
                              static_cast<std::size_t>(a.shape(1)),
                              std::vector<cplx>(a.data(), a.data() + a.size()));
              return to_array(wavelet_synthesize(code, spec));
          },
          py::arg("alpha"), py::arg("family") = "db4", py::arg("levels") = 3);

    m.def("corrupt",
          [](const py::array_t<double, py::array::c_style | py::array::forcecast>& image,
             const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& mask,
             double rician_sigma, std::uint64_t seed) {
              RealImage img = real_from_array(image);
              SamplingMask msk = mask_from_array(mask);
              if (rician_sigma > 0.0) {
                  RicianParams rp{rician_sigma, seed};
                  return to_array(corrupt(img, msk, &rp));
              }
              return to_array(corrupt(img, msk));
          },
          py::arg("image"), py::arg("mask"), py::arg("rician_sigma") = 0.0, py::arg("seed") = 0);

    m.def("add_rician",
          [](const py::array_t<double, py::array::c_style | py::array::forcecast>& image,
             double sigma, std::uint64_t seed) {
              return to_array(add_rician(real_from_array(image), RicianParams{sigma, seed}));
          },
          py::arg("image"), py::arg("sigma"), py::arg("seed") = 0);

    m.def("prox_lp",
          [](const py::array_t<cplx, py::array::c_style | py::array::forcecast>& v, double tau,
             double p) {
              SparseCode code(static_cast<std::size_t>(v.shape(0)),
                              static_cast<std::size_t>(v.shape(1)),
                              std::vector<cplx>(v.data(), v.data() + v.size()));
              return to_array(prox_lp(code, ProxParams{tau, p}));
          },
          py::arg("v"), py::arg("tau"), py::arg("p"));

    m.def("recon",
          [](const py::array_t<cplx, py::array::c_style | py::array::forcecast>& y,
             const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& mask,
             const std::string& denoiser, double denoiser_param, std::uint64_t seed,
             const std::string& variant, const py::kwargs& kwargs) {
              SolverConfig cfg = config_from_kwargs(kwargs);
              DenoiserOptions opts;
              opts.param = denoiser_param;
              opts.seed = seed;
              opts.spec = cfg.wavelet_spec();
              SolveResult res = solve(complex_from_array(y, Domain::kspace),
                                      mask_from_array(mask), cfg, make_denoiser(denoiser, opts),
                                      parse_variant(variant));
              return result_to_dict(res);
          },
          py::arg("y"), py::arg("mask"), py::arg("denoiser") = "identity",
          py::arg("denoiser_param") = 1.0, py::arg("seed") = 0, py::arg("variant") = "full");

    m.def("rician_recon",
          [](const py::array_t<cplx, py::array::c_style | py::array::forcecast>& y,
             const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& mask,
             double sigma, const std::string& denoiser, double denoiser_param,
             std::uint64_t seed, double rho1, double lambda1, double lambda2,
             std::size_t outer_iters, const py::kwargs& kwargs) {
              RicianSolverConfig rcfg;
              rcfg.inner = config_from_kwargs(kwargs);
              rcfg.sigma = sigma;
              rcfg.rho1 = rho1;
              rcfg.lambda1 = lambda1;
              rcfg.lambda2 = lambda2;
              rcfg.outer_iters = outer_iters;
              DenoiserOptions opts;
              opts.param = denoiser_param;
              opts.seed = seed;
              opts.spec = rcfg.inner.wavelet_spec();
              Denoiser inner = make_denoiser(denoiser, opts);
              SolveResult res =
                  solve_rician(complex_from_array(y, Domain::kspace), mask_from_array(mask),
                               rcfg, make_rician_remover(sigma, inner), inner);
              return result_to_dict(res);
          },
          py::arg("y"), py::arg("mask"), py::arg("sigma"), py::arg("denoiser") = "identity",
          py::arg("denoiser_param") = 1.0, py::arg("seed") = 0, py::arg("rho1") = 0.01,
          py::arg("lambda1") = 1.0, py::arg("lambda2") = 1.0, py::arg("outer_iters") = 3);

    m.def("psnr",
          [](const py::array_t<double, py::array::c_style | py::array::forcecast>& ref,
             const py::array_t<double, py::array::c_style | py::array::forcecast>& rec,
             double peak) { return psnr(real_from_array(ref), real_from_array(rec), peak); },
          py::arg("ref"), py::arg("rec"), py::arg("peak") = 0.0);
    m.def("mse",
          [](const py::array_t<double, py::array::c_style | py::array::forcecast>& a,
             const py::array_t<double, py::array::c_style | py::array::forcecast>& b) {
              return mse(real_from_array(a), real_from_array(b));
          });
    m.def("rlne",
          [](const py::array_t<double, py::array::c_style | py::array::forcecast>& ref,
             const py::array_t<double, py::array::c_style | py::array::forcecast>& rec) {
              return rlne(real_from_array(ref), real_from_array(rec));
          });

    m.def("denoisers", [] { return denoiser_names(); });
}
