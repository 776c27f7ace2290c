#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "pathlab/errors.hpp"

namespace pathlab::nn {

struct Param {
    Eigen::MatrixXd value;
    Eigen::MatrixXd grad;
    Eigen::MatrixXd adam_m;
    Eigen::MatrixXd adam_v;
};

/// Named dense f64 parameter tensors with Adam state. Iteration order is the
/// registration order and is deterministic.
class ParamStore {
public:
    Param& add(const std::string& name, Eigen::Index rows, Eigen::Index cols);
    Param& at(const std::string& name);
    const Param& at(const std::string& name) const;
    bool has(const std::string& name) const { return map_.count(name) > 0; }
    const std::vector<std::string>& names() const { return order_; }

    std::size_t num_parameters() const;
    void zero_grad();
    void check_finite_grads() const;

    long long step = 0;

private:
    std::vector<std::string> order_;
    std::unordered_map<std::string, Param> map_;
};

/// Standard bias-corrected Adam update over all parameters; increments step.
void adam_step(ParamStore& store, double lr, double beta1 = 0.9, double beta2 = 0.999,
               double eps = 1e-8);

/// Row-wise uniform init in +-1/sqrt(cols), seeded.
void init_uniform(Eigen::MatrixXd& m, std::uint64_t seed);

// --- checkpoints ----------------------------------------------------------

/// Versioned binary blob: magic, JSON header (names, shapes, config json),
/// then raw little-endian f64 data in name order.
void save_checkpoint(const ParamStore& store, const std::string& config_json,
                     const std::string& path);
std::string load_checkpoint(ParamStore& store, const std::string& path);  // returns config json

}  // namespace pathlab::nn
