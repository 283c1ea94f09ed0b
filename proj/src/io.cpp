#include "csmri/io.hpp"

#include <cstring>
#include <fstream>
#include <sstream>

namespace csmri {
namespace {

constexpr char kMagic[4] = {'R', 'I', 'M', 'G'};
constexpr std::uint16_t kVersion = 1;

void put_u16(std::ostream& os, std::uint16_t v) {
    const unsigned char b[2] = {static_cast<unsigned char>(v & 0xff),
                                static_cast<unsigned char>(v >> 8)};
    os.write(reinterpret_cast<const char*>(b), 2);
}

void put_u32(std::ostream& os, std::uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
    os.write(reinterpret_cast<const char*>(b), 4);
}

void put_f32(std::ostream& os, float v) {
    static_assert(sizeof(float) == 4);
    std::uint32_t bits;
    std::memcpy(&bits, &v, 4);
    put_u32(os, bits);
}

std::uint16_t get_u16(std::istream& is) {
    unsigned char b[2];
    is.read(reinterpret_cast<char*>(b), 2);
    return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
}

std::uint32_t get_u32(std::istream& is) {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    return v;
}

float get_f32(std::istream& is) {
    const std::uint32_t bits = get_u32(is);
    float v;
    std::memcpy(&v, &bits, 4);
    return v;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    return os;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
    return is;
}

void write_header(std::ostream& os, std::uint8_t dtype, std::size_t h, std::size_t w) {
    os.write(kMagic, 4);
    put_u16(os, kVersion);
    os.put(static_cast<char>(dtype));
    put_u32(os, static_cast<std::uint32_t>(h));
    put_u32(os, static_cast<std::uint32_t>(w));
}

} // namespace

void write_rimg(const std::filesystem::path& path, const RealImage& img) {
    auto os = open_out(path);
    write_header(os, 0, img.height, img.width);
    for (double v : img.data) put_f32(os, static_cast<float>(v));
}

void write_rimg(const std::filesystem::path& path, const ComplexImage& img) {
    auto os = open_out(path);
    write_header(os, 1, img.height, img.width);
    for (const cplx& z : img.data) {
        put_f32(os, static_cast<float>(z.real()));
        put_f32(os, static_cast<float>(z.imag()));
    }
}

LoadedImage read_rimg(const std::filesystem::path& path) {
    auto is = open_in(path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("'" + path.string() + "' is not a RIMG file");
    if (get_u16(is) != kVersion)
        throw std::runtime_error("'" + path.string() + "': unsupported RIMG version");
    const int dtype = is.get();
    const std::uint32_t h = get_u32(is), w = get_u32(is);
    if (!is || (dtype != 0 && dtype != 1))
        throw std::runtime_error("'" + path.string() + "': bad RIMG header");
    LoadedImage out;
    const std::size_t n = static_cast<std::size_t>(h) * w;
    if (dtype == 0) {
        std::vector<double> data(n);
        for (auto& v : data) v = get_f32(is);
        if (!is) throw std::runtime_error("'" + path.string() + "': truncated payload");
        out.real = RealImage(h, w, std::move(data));
    } else {
        std::vector<cplx> data(n);
        for (auto& z : data) {
            const double re = get_f32(is), im = get_f32(is);
            z = cplx{re, im};
        }
        if (!is) throw std::runtime_error("'" + path.string() + "': truncated payload");
        out.is_complex = true;
        out.complex = ComplexImage(h, w, std::move(data), Domain::image);
    }
    return out;
}

RealImage read_rimg_real(const std::filesystem::path& path) {
    LoadedImage li = read_rimg(path);
    if (li.is_complex) throw std::runtime_error("'" + path.string() + "': expected real data");
    return std::move(li.real);
}

ComplexImage read_rimg_complex(const std::filesystem::path& path, Domain domain) {
    LoadedImage li = read_rimg(path);
    if (!li.is_complex) {
        ComplexImage out(li.real.height, li.real.width, domain);
        for (std::size_t i = 0; i < out.size(); ++i) out.data[i] = cplx{li.real.data[i], 0.0};
        return out;
    }
    li.complex.domain = domain;
    return std::move(li.complex);
}

RealImage read_pgm(const std::filesystem::path& path) {
    auto is = open_in(path);
    std::string magic;
    is >> magic;
    if (magic != "P5") throw std::runtime_error("'" + path.string() + "': only binary PGM (P5)");
    auto next_token = [&is, &path]() {
        std::string tok;
        while (is >> tok) {
            if (tok[0] == '#') {
                std::string rest;
                std::getline(is, rest);
                continue;
            }
            return tok;
        }
        throw std::runtime_error("'" + path.string() + "': truncated PGM header");
    };
    const std::size_t w = std::stoul(next_token());
    const std::size_t h = std::stoul(next_token());
    const unsigned long maxval = std::stoul(next_token());
    if (maxval == 0 || maxval > 65535)
        throw std::runtime_error("'" + path.string() + "': bad PGM maxval");
    is.get(); // single whitespace before payload
    const bool wide = maxval > 255;
    std::vector<double> data(h * w);
    for (auto& v : data) {
        int hi = is.get();
        if (wide) {
            const int lo = is.get();
            hi = (hi << 8) | lo;
        }
        if (!is) throw std::runtime_error("'" + path.string() + "': truncated PGM payload");
        v = static_cast<double>(hi) / static_cast<double>(maxval);
    }
    return RealImage(h, w, std::move(data));
}

RealImage read_real_image(const std::filesystem::path& path) {
    if (path.extension() == ".pgm") return read_pgm(path);
    return read_rimg_real(path);
}

void write_trace_csv(const std::filesystem::path& path, const IterateTrace& trace) {
    auto os = open_out(path);
    os << "k,phi,phi_w,accepted,step_norm,c_k,rel_change\n";
    char buf[512];
    for (const TraceRow& r : trace) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g,%d,%.17g,%.17g,%.17g\n", r.k, r.phi,
                      r.phi_w, r.accepted ? 1 : 0, r.step_norm, r.c_k, r.rel_change);
        os << buf;
    }
}

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream is(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto notspace = line.find_first_not_of(" \t\r\n");
        if (notspace == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r\n");
            const auto e = s.find_last_not_of(" \t\r\n");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        auto num = [&] {
            try {
                std::size_t pos = 0;
                const double v = std::stod(val, &pos);
                if (pos != val.size()) throw std::invalid_argument("trailing junk");
                return v;
            } catch (const std::exception&) {
                throw ConfigError("config: bad numeric value for '" + key + "': " + val);
            }
        };
        SolverConfig& s = cfg.solver;
        if (key == "lambda") s.lambda = num();
        else if (key == "p") s.p = num();
        else if (key == "rho") s.rho = num();
        else if (key == "eta1") s.eta1 = num();
        else if (key == "eta2") s.eta2 = num();
        else if (key == "lipschitz") s.lipschitz = num();
        else if (key == "epsilon0") s.epsilon0 = num();
        else if (key == "epsilon_decay") s.epsilon_decay = num();
        else if (key == "tol") s.tol = num();
        else if (key == "max_iters") s.max_iters = static_cast<std::size_t>(num());
        else if (key == "wavelet_levels") s.wavelet_levels = static_cast<std::size_t>(num());
        else if (key == "wavelet_family") {
            if (val == "haar") s.wavelet_family = WaveletFamily::haar;
            else if (val == "db4") s.wavelet_family = WaveletFamily::db4;
            else throw ConfigError("config: unknown wavelet_family '" + val + "'");
        } else if (key == "check_rule") {
            if (val == "prop1") s.check_rule = CheckRule::prop1;
            else if (val == "eq8") s.check_rule = CheckRule::eq8;
            else throw ConfigError("config: unknown check_rule '" + val + "'");
        } else if (key == "denoise_level_begin") s.denoise_level_begin = num();
        else if (key == "denoise_level_end") s.denoise_level_end = num();
        else if (key == "rho1") cfg.rician.rho1 = num();
        else if (key == "lambda1") cfg.rician.lambda1 = num();
        else if (key == "lambda2") cfg.rician.lambda2 = num();
        else if (key == "outer_iters") cfg.rician.outer_iters = static_cast<std::size_t>(num());
        else if (key == "sigma") cfg.rician.sigma = num();
        else if (key == "mask_type") cfg.mask_type = val;
        else if (key == "mask_ratio") cfg.mask_ratio = num();
        else if (key == "denoiser") cfg.denoiser = val;
        else if (key == "denoiser_param") cfg.denoiser_param = num();
        else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(num());
        else throw ConfigError("config: unknown key '" + key + "'");
    }
    cfg.rician.inner = cfg.solver;
    return cfg;
}

ExperimentConfig parse_config(const std::filesystem::path& path) {
    auto is = open_in(path);
    std::ostringstream buf;
    buf << is.rdbuf();
    return parse_config_text(buf.str());
}

} // namespace csmri
