#include "mvrkm/model_io.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>

namespace mvrkm {

namespace {

constexpr char kMagic[8] = {'M', 'V', 'R', 'K', 'M', 'B', 'I', 'N'};
constexpr std::uint32_t kFormatVersion = 1;
constexpr std::uint32_t kTagMvrkm = 1;
constexpr std::uint32_t kTagLssvm = 2;

constexpr std::uint32_t kPreimageLinear = 0;
constexpr std::uint32_t kPreimageSmoother = 1;
constexpr std::uint32_t kPreimageKrr = 2;

class Writer {
  public:
    explicit Writer(const std::string& path) : out_(path, std::ios::binary), path_(path) {
        if (!out_) throw std::runtime_error("cannot write '" + path + "'");
    }

    void raw(const void* data, std::size_t n) {
        out_.write(static_cast<const char*>(data), static_cast<std::streamsize>(n));
    }

    void u32(std::uint32_t v) {
        unsigned char b[4];
        for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
        raw(b, 4);
    }

    void u64(std::uint64_t v) {
        unsigned char b[8];
        for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
        raw(b, 8);
    }

    void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }

    void vec(const Vector& v) {
        u64(static_cast<std::uint64_t>(v.size()));
        for (Index i = 0; i < v.size(); ++i) f64(v(i));
    }

    void mat(const Matrix& m) {
        u64(static_cast<std::uint64_t>(m.rows()));
        u64(static_cast<std::uint64_t>(m.cols()));
        for (Index j = 0; j < m.cols(); ++j)
            for (Index i = 0; i < m.rows(); ++i) f64(m(i, j));
    }

    void kernel(const KernelSpec& spec) {
        u32(spec.family == KernelFamily::linear ? 0u : 1u);
        f64(spec.sigma);
    }

    void stats(const std::optional<ColumnStats>& s) {
        u32(s ? 1u : 0u);
        if (s) {
            vec(s->mean);
            vec(s->stddev);
        }
    }

    void preimage(const PreimageSpec& spec) {
        if (std::holds_alternative<LinearPreimage>(spec)) {
            u32(kPreimageLinear);
        } else if (const auto* sm = std::get_if<SmootherPreimage>(&spec)) {
            u32(kPreimageSmoother);
            u64(static_cast<std::uint64_t>(sm->n_r));
        } else {
            const auto& k = std::get<KrrPreimage>(spec);
            u32(kPreimageKrr);
            f64(k.lambda);
            f64(k.sigma_h);
        }
    }

    void finish() {
        out_.flush();
        if (!out_) throw std::runtime_error("write failed for '" + path_ + "'");
    }

  private:
    std::ofstream out_;
    std::string path_;
};

class Reader {
  public:
    explicit Reader(const std::string& path) : in_(path, std::ios::binary), path_(path) {
        if (!in_) throw std::runtime_error("cannot open '" + path + "'");
    }

    void raw(void* data, std::size_t n) {
        in_.read(static_cast<char*>(data), static_cast<std::streamsize>(n));
        if (in_.gcount() != static_cast<std::streamsize>(n)) {
            throw std::runtime_error("'" + path_ + "': unexpected end of file");
        }
    }

    std::uint32_t u32() {
        unsigned char b[4];
        raw(b, 4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
        return v;
    }

    std::uint64_t u64() {
        unsigned char b[8];
        raw(b, 8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
        return v;
    }

    double f64() { return std::bit_cast<double>(u64()); }

    Index count(const char* what) {
        const std::uint64_t v = u64();
        if (v > (1ull << 32)) {
            throw std::runtime_error("'" + path_ + "': implausible " + std::string(what) + " count");
        }
        return static_cast<Index>(v);
    }

    Vector vec() {
        const Index n = count("vector");
        Vector v(n);
        for (Index i = 0; i < n; ++i) v(i) = f64();
        return v;
    }

    Matrix mat() {
        const Index rows = count("row");
        const Index cols = count("column");
        Matrix m(rows, cols);
        for (Index j = 0; j < cols; ++j)
            for (Index i = 0; i < rows; ++i) m(i, j) = f64();
        return m;
    }

    KernelSpec kernel() {
        const std::uint32_t fam = u32();
        const double sigma = f64();
        if (fam == 0) return KernelSpec::linear();
        if (fam == 1) return KernelSpec::rbf(sigma);
        throw std::runtime_error("'" + path_ + "': unknown kernel family tag " + std::to_string(fam));
    }

    std::optional<ColumnStats> stats() {
        if (u32() == 0) return std::nullopt;
        ColumnStats s;
        s.mean = vec();
        s.stddev = vec();
        return s;
    }

    PreimageSpec preimage() {
        const std::uint32_t tag = u32();
        if (tag == kPreimageLinear) return LinearPreimage{};
        if (tag == kPreimageSmoother) return SmootherPreimage{static_cast<int>(u64())};
        if (tag == kPreimageKrr) {
            const double lambda = f64();
            const double sigma_h = f64();
            return KrrPreimage{lambda, sigma_h};
        }
        throw std::runtime_error("'" + path_ + "': unknown pre-image tag " + std::to_string(tag));
    }

    const std::string& path() const { return path_; }

  private:
    std::ifstream in_;
    std::string path_;
};

void write_header(Writer& w, std::uint32_t tag) {
    w.raw(kMagic, sizeof(kMagic));
    w.u32(kFormatVersion);
    w.u32(tag);
}

std::uint32_t read_header(Reader& r) {
    char magic[8];
    r.raw(magic, sizeof(magic));
    if (std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
        throw std::runtime_error("'" + r.path() + "' is not a model file");
    }
    const std::uint32_t version = r.u32();
    if (version != kFormatVersion) {
        throw std::runtime_error("'" + r.path() + "': unsupported format version " +
                                 std::to_string(version));
    }
    return r.u32();
}

} // namespace

StoredMvrkm train_from_config(const TimeSeries& train, const MvrkmConfig& config) {
    const TimeSeries fit_series =
        config.standardize ? standardize(train) : TimeSeries{train.values, std::nullopt};
    const LaggedDataset data = lag_embed(fit_series, config.p);
    const Index s_eff = config.s == 0 ? std::min<Index>(data.size(), 50) : config.s;
    StoredMvrkm stored;
    stored.model = fit(data, config.kx, config.ky, s_eff, config.center);
    stored.model.standardization = fit_series.standardization;
    stored.x0 = initial_window(fit_series, config.p);
    stored.default_preimage = config.preimage;
    return stored;
}

StoredLssvm train_from_config(const TimeSeries& train, const LssvmConfig& config) {
    const TimeSeries fit_series =
        config.standardize ? standardize(train) : TimeSeries{train.values, std::nullopt};
    const LaggedDataset data = lag_embed(fit_series, config.p);
    StoredLssvm stored;
    stored.model = lssvm_fit(data, config.kx, config.gamma);
    stored.model.standardization = fit_series.standardization;
    stored.x0 = initial_window(fit_series, config.p);
    return stored;
}

StoredModel train_from_config(const TimeSeries& train, const TrialConfig& config) {
    if (const auto* m = std::get_if<MvrkmConfig>(&config)) return train_from_config(train, *m);
    return train_from_config(train, std::get<LssvmConfig>(config));
}

void save_model(const std::string& path, const StoredMvrkm& stored) {
    const TrainedModel& m = stored.model;
    Writer w(path);
    write_header(w, kTagMvrkm);
    w.u64(static_cast<std::uint64_t>(m.p));
    w.u64(static_cast<std::uint64_t>(m.s));
    w.u32(m.centered ? 1u : 0u);
    w.kernel(m.kx);
    w.kernel(m.ky);
    w.stats(m.standardization);
    w.vec(stored.x0);
    w.preimage(stored.default_preimage);
    w.mat(m.H);
    w.vec(m.lambda);
    w.mat(m.X_train);
    w.mat(m.Y_train);
    w.finish();
}

void save_model(const std::string& path, const StoredLssvm& stored) {
    const LssvmModel& m = stored.model;
    Writer w(path);
    write_header(w, kTagLssvm);
    w.u64(static_cast<std::uint64_t>(m.p));
    w.f64(m.gamma);
    w.kernel(m.kx);
    w.stats(m.standardization);
    w.vec(stored.x0);
    w.mat(m.alpha);
    w.vec(m.b);
    w.mat(m.X_train);
    w.finish();
}

StoredModel load_model(const std::string& path) {
    Reader r(path);
    const std::uint32_t tag = read_header(r);

    if (tag == kTagMvrkm) {
        StoredMvrkm stored;
        TrainedModel& m = stored.model;
        m.p = static_cast<int>(r.u64());
        m.s = static_cast<Index>(r.u64());
        m.centered = r.u32() != 0;
        m.kx = r.kernel();
        m.ky = r.kernel();
        m.standardization = r.stats();
        stored.x0 = r.vec();
        stored.default_preimage = r.preimage();
        m.H = r.mat();
        m.lambda = r.vec();
        m.X_train = r.mat();
        m.Y_train = r.mat();
        if (m.H.rows() != m.s || m.H.cols() != m.X_train.rows() || m.lambda.size() != m.s ||
            m.Y_train.rows() != m.X_train.rows()) {
            throw std::runtime_error("'" + path + "': inconsistent stored dimensions");
        }
        rebuild_derived(m);
        return stored;
    }
    if (tag == kTagLssvm) {
        StoredLssvm stored;
        LssvmModel& m = stored.model;
        m.p = static_cast<int>(r.u64());
        m.gamma = r.f64();
        m.kx = r.kernel();
        m.standardization = r.stats();
        stored.x0 = r.vec();
        m.alpha = r.mat();
        m.b = r.vec();
        m.X_train = r.mat();
        if (m.alpha.rows() != m.X_train.rows() || m.b.size() != m.alpha.cols()) {
            throw std::runtime_error("'" + path + "': inconsistent stored dimensions");
        }
        return stored;
    }
    throw std::runtime_error("'" + path + "': unknown model type tag " + std::to_string(tag));
}

} // namespace mvrkm
