#include "pathlab/nn/params.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <random>

namespace pathlab::nn {

Param& ParamStore::add(const std::string& name, Eigen::Index rows, Eigen::Index cols) {
    auto [it, inserted] = map_.try_emplace(name);
    if (!inserted) throw InvalidParams("duplicate parameter name: " + name);
    order_.push_back(name);
    Param& p = it->second;
    p.value = Eigen::MatrixXd::Zero(rows, cols);
    p.grad = Eigen::MatrixXd::Zero(rows, cols);
    p.adam_m = Eigen::MatrixXd::Zero(rows, cols);
    p.adam_v = Eigen::MatrixXd::Zero(rows, cols);
    return p;
}

Param& ParamStore::at(const std::string& name) {
    auto it = map_.find(name);
    if (it == map_.end()) throw InvalidParams("unknown parameter: " + name);
    return it->second;
}

const Param& ParamStore::at(const std::string& name) const {
    auto it = map_.find(name);
    if (it == map_.end()) throw InvalidParams("unknown parameter: " + name);
    return it->second;
}

std::size_t ParamStore::num_parameters() const {
    std::size_t total = 0;
    for (const auto& name : order_) total += at(name).value.size();
    return total;
}

void ParamStore::zero_grad() {
    for (const auto& name : order_) at(name).grad.setZero();
}

void ParamStore::check_finite_grads() const {
    for (const auto& name : order_)
        if (!at(name).grad.allFinite())
            throw NonFinite("non-finite gradient in " + name);
}

void adam_step(ParamStore& store, double lr, double beta1, double beta2, double eps) {
    ++store.step;
    double t = static_cast<double>(store.step);
    double bc1 = 1.0 - std::pow(beta1, t);
    double bc2 = 1.0 - std::pow(beta2, t);
    for (const auto& name : store.names()) {
        Param& p = store.at(name);
        if (p.grad.rows() != p.value.rows() || p.grad.cols() != p.value.cols())
            throw ShapeMismatch("gradient shape mismatch for " + name);
        p.adam_m = beta1 * p.adam_m + (1.0 - beta1) * p.grad;
        p.adam_v = beta2 * p.adam_v + (1.0 - beta2) * p.grad.cwiseProduct(p.grad);
        Eigen::ArrayXXd mhat = p.adam_m.array() / bc1;
        Eigen::ArrayXXd vhat = p.adam_v.array() / bc2;
        p.value.array() -= lr * (mhat / (vhat.sqrt() + eps));
    }
}

void init_uniform(Eigen::MatrixXd& m, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double bound = 1.0 / std::sqrt(static_cast<double>(m.cols()));
    std::uniform_real_distribution<double> unif(-bound, bound);
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = unif(rng);
}

// --- checkpoints ----------------------------------------------------------

namespace {
constexpr char kMagic[] = "PATHLAB-CKPT-1\n";
}

void save_checkpoint(const ParamStore& store, const std::string& config_json,
                     const std::string& path) {
    nlohmann::json header;
    header["config"] = config_json;
    header["step"] = store.step;
    nlohmann::json tensors = nlohmann::json::array();
    for (const auto& name : store.names()) {
        const Param& p = store.at(name);
        tensors.push_back({{"name", name}, {"rows", p.value.rows()}, {"cols", p.value.cols()}});
    }
    header["tensors"] = std::move(tensors);
    std::string hs = header.dump();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write checkpoint: " + path);
    out.write(kMagic, sizeof(kMagic) - 1);
    std::uint64_t len = hs.size();
    out.write(reinterpret_cast<const char*>(&len), 8);
    out.write(hs.data(), static_cast<std::streamsize>(hs.size()));
    for (const auto& name : store.names()) {
        const Param& p = store.at(name);
        out.write(reinterpret_cast<const char*>(p.value.data()),
                  static_cast<std::streamsize>(p.value.size() * sizeof(double)));
    }
}

std::string load_checkpoint(ParamStore& store, const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read checkpoint: " + path);
    char magic[sizeof(kMagic) - 1];
    in.read(magic, sizeof(magic));
    if (!in || std::string(magic, sizeof(magic)) != std::string(kMagic, sizeof(magic)))
        throw Error("bad checkpoint magic");
    std::uint64_t len = 0;
    in.read(reinterpret_cast<char*>(&len), 8);
    std::string hs(len, '\0');
    in.read(hs.data(), static_cast<std::streamsize>(len));
    nlohmann::json header = nlohmann::json::parse(hs);
    store.step = header.at("step").get<long long>();
    for (const auto& t : header.at("tensors")) {
        std::string name = t.at("name").get<std::string>();
        Eigen::Index rows = t.at("rows").get<Eigen::Index>();
        Eigen::Index cols = t.at("cols").get<Eigen::Index>();
        Param& p = store.has(name) ? store.at(name) : store.add(name, rows, cols);
        if (p.value.rows() != rows || p.value.cols() != cols)
            throw ShapeMismatch("checkpoint tensor shape mismatch: " + name);
        in.read(reinterpret_cast<char*>(p.value.data()),
                static_cast<std::streamsize>(rows * cols * sizeof(double)));
    }
    if (!in) throw Error("truncated checkpoint");
    return header.at("config").get<std::string>();
}

}  // namespace pathlab::nn
