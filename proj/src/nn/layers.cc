// src/nn/layers.cc

// Copyright 2026  The flexslu Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "flexslu/nn/layers.h"

#include <cmath>

namespace flexslu {

void Parameter::init_uniform(double bound, Rng& rng) {
  std::uniform_real_distribution<double> dist(-bound, bound);
  for (Eigen::Index i = 0; i < value.size(); ++i) value.data()[i] = dist(rng);
}

namespace {

double fan_in_bound(Eigen::Index fan_in) {
  return 1.0 / std::sqrt(static_cast<double>(fan_in));
}

Eigen::ArrayXd sigmoid(const Eigen::ArrayXd& a) {
  return 1.0 / (1.0 + (-a).exp());
}

}  // namespace

// Linear

Linear::Linear(const std::string& name, int in, int out)
    : weight(name + ".weight", out, in), bias(name + ".bias", out, 1) {}

Vector Linear::forward(const Vector& x) const {
  return weight.value * x + bias.value.col(0);
}

Vector Linear::backward(const Vector& x, const Vector& dy) {
  weight.grad.noalias() += dy * x.transpose();
  bias.grad.col(0) += dy;
  return weight.value.transpose() * dy;
}

void Linear::init(Rng& rng) {
  double b = fan_in_bound(weight.value.cols());
  weight.init_uniform(b, rng);
  bias.init_uniform(b, rng);
}

// Conv1d

Conv1d::Conv1d(const std::string& name, int in_channels, int out_channels,
               int kernel, int stride)
    : weight(name + ".weight", out_channels, kernel * in_channels),
      bias(name + ".bias", out_channels, 1),
      in_(in_channels),
      out_(out_channels),
      kernel_(kernel),
      stride_(stride) {}

int Conv1d::output_length(int frames) const {
  if (frames < kernel_) return 0;
  return (frames - kernel_) / stride_ + 1;
}

Conv1d::Trace Conv1d::forward(const Matrix& x) const {
  const int frames = static_cast<int>(x.rows());
  const int t_out = output_length(frames);
  Trace tr;
  tr.columns.resize(t_out, kernel_ * in_);
  for (int t = 0; t < t_out; ++t)
    for (int j = 0; j < kernel_; ++j)
      tr.columns.block(t, j * in_, 1, in_) = x.row(t * stride_ + j);
  tr.output = tr.columns * weight.value.transpose();
  tr.output.rowwise() += bias.value.col(0).transpose();
  tr.output = tr.output.cwiseMax(0.0);
  return tr;
}

Matrix Conv1d::backward(const Trace& trace, const Matrix& dy, int frames) {
  // ReLU passes gradient only where the output was positive.
  Matrix dz = (trace.output.array() > 0.0).cast<double>() * dy.array();
  weight.grad.noalias() += dz.transpose() * trace.columns;
  bias.grad.col(0) += dz.colwise().sum().transpose();
  Matrix dcols = dz * weight.value;
  Matrix dx = Matrix::Zero(frames, in_);
  for (Eigen::Index t = 0; t < dcols.rows(); ++t)
    for (int j = 0; j < kernel_; ++j)
      dx.row(t * stride_ + j) += dcols.block(t, j * in_, 1, in_);
  return dx;
}

void Conv1d::init(Rng& rng) {
  double b = fan_in_bound(weight.value.cols());
  weight.init_uniform(b, rng);
  bias.init_uniform(b, rng);
}

// Gru

Gru::Gru(const std::string& name, int in, int hidden)
    : w_ih(name + ".w_ih", 3 * hidden, in),
      w_hh(name + ".w_hh", 3 * hidden, hidden),
      bias(name + ".bias", 3 * hidden, 1) {}

Gru::Trace Gru::forward(const Matrix& x) const {
  const Eigen::Index steps = x.rows();
  const Eigen::Index h = hidden_dim();
  Trace tr;
  tr.input = x;
  tr.hidden = Matrix::Zero(steps + 1, h);
  tr.update.resize(steps, h);
  tr.reset.resize(steps, h);
  tr.cand.resize(steps, h);
  // Input projections for all steps at once.
  Matrix xproj = x * w_ih.value.transpose();
  xproj.rowwise() += bias.value.col(0).transpose();
  const auto uz = w_hh.value.topRows(h);
  const auto ur = w_hh.value.middleRows(h, h);
  const auto un = w_hh.value.bottomRows(h);
  for (Eigen::Index t = 0; t < steps; ++t) {
    Vector prev = tr.hidden.row(t).transpose();
    Vector xp = xproj.row(t).transpose();
    Eigen::ArrayXd z = sigmoid((xp.head(h) + uz * prev).array());
    Eigen::ArrayXd r = sigmoid((xp.segment(h, h) + ur * prev).array());
    Vector gated = (r * prev.array()).matrix();
    Eigen::ArrayXd n = (xp.tail(h) + un * gated).array().tanh();
    tr.update.row(t) = z.transpose();
    tr.reset.row(t) = r.transpose();
    tr.cand.row(t) = n.transpose();
    tr.hidden.row(t + 1) = ((1.0 - z) * n + z * prev.array()).transpose();
  }
  return tr;
}

Matrix Gru::outputs(const Trace& trace) {
  return trace.hidden.bottomRows(trace.hidden.rows() - 1);
}

Matrix Gru::backward(const Trace& trace, const Matrix& dy) {
  const Eigen::Index steps = trace.input.rows();
  const Eigen::Index h = hidden_dim();
  const auto uz = w_hh.value.topRows(h);
  const auto ur = w_hh.value.middleRows(h, h);
  const auto un = w_hh.value.bottomRows(h);
  Matrix dxproj(steps, 3 * h);
  Vector carry = Vector::Zero(h);
  for (Eigen::Index t = steps - 1; t >= 0; --t) {
    Eigen::ArrayXd dh = (dy.row(t).transpose() + carry).array();
    Eigen::ArrayXd prev = trace.hidden.row(t).transpose().array();
    Eigen::ArrayXd z = trace.update.row(t).transpose().array();
    Eigen::ArrayXd r = trace.reset.row(t).transpose().array();
    Eigen::ArrayXd n = trace.cand.row(t).transpose().array();

    Eigen::ArrayXd dn = dh * (1.0 - z);
    Eigen::ArrayXd dz = dh * (prev - n);
    Eigen::ArrayXd dprev = dh * z;

    Vector da_n = (dn * (1.0 - n * n)).matrix();
    Vector gated = (r * prev).matrix();
    Vector dgated = un.transpose() * da_n;
    Eigen::ArrayXd dr = dgated.array() * prev;
    dprev += dgated.array() * r;

    Vector da_r = (dr * r * (1.0 - r)).matrix();
    Vector da_z = (dz * z * (1.0 - z)).matrix();
    dprev += (ur.transpose() * da_r).array();
    dprev += (uz.transpose() * da_z).array();

    w_hh.grad.topRows(h).noalias() += da_z * prev.matrix().transpose();
    w_hh.grad.middleRows(h, h).noalias() += da_r * prev.matrix().transpose();
    w_hh.grad.bottomRows(h).noalias() += da_n * gated.transpose();

    dxproj.block(t, 0, 1, h) = da_z.transpose();
    dxproj.block(t, h, 1, h) = da_r.transpose();
    dxproj.block(t, 2 * h, 1, h) = da_n.transpose();
    carry = dprev.matrix();
  }
  w_ih.grad.noalias() += dxproj.transpose() * trace.input;
  bias.grad.col(0) += dxproj.colwise().sum().transpose();
  return dxproj * w_ih.value;
}

void Gru::init(Rng& rng) {
  double b = fan_in_bound(hidden_dim());
  w_ih.init_uniform(b, rng);
  w_hh.init_uniform(b, rng);
  bias.init_uniform(b, rng);
}

// Embedding

Embedding::Embedding(const std::string& name, int vocab, int dim)
    : table(name + ".table", vocab, dim) {}

Matrix Embedding::forward(std::span<const int> ids) const {
  Matrix out(static_cast<Eigen::Index>(ids.size()), dim());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] < 0 || ids[i] >= vocab_size())
      throw Error("token id " + std::to_string(ids[i]) +
                  " outside embedding table of size " +
                  std::to_string(vocab_size()));
    out.row(static_cast<Eigen::Index>(i)) = table.value.row(ids[i]);
  }
  return out;
}

void Embedding::backward(std::span<const int> ids, const Matrix& dy) {
  for (std::size_t i = 0; i < ids.size(); ++i)
    table.grad.row(ids[i]) += dy.row(static_cast<Eigen::Index>(i));
}

void Embedding::init(Rng& rng) { table.init_uniform(1.0, rng); }

int argmax(const Vector& v) {
  if (v.size() == 0) throw Error("argmax of an empty vector");
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i)
    if (v(i) > v(best)) best = i;
  return static_cast<int>(best);
}

double softmax_cross_entropy(const Vector& logits, int target, Vector* dlogits) {
  if (target < 0 || target >= logits.size())
    throw Error("cross-entropy target " + std::to_string(target) +
                " out of range");
  const double max = logits.maxCoeff();
  Eigen::ArrayXd e = (logits.array() - max).exp();
  const double sum = e.sum();
  const double loss = std::log(sum) - (logits(target) - max);
  if (dlogits) {
    *dlogits = (e / sum).matrix();
    (*dlogits)(target) -= 1.0;
  }
  return loss;
}

}  // namespace flexslu
