#include "mdem/optimizers.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <tuple>

namespace mdem {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

void Adam::step(std::span<double> theta, std::span<const double> grad) {
  ++t_;
  const double b1c = 1.0 - std::pow(cfg_.beta1, static_cast<double>(t_));
  const double b2c = 1.0 - std::pow(cfg_.beta2, static_cast<double>(t_));
  for (size_t i = 0; i < theta.size(); ++i) {
    m_[i] = cfg_.beta1 * m_[i] + (1.0 - cfg_.beta1) * grad[i];
    v_[i] = cfg_.beta2 * v_[i] + (1.0 - cfg_.beta2) * grad[i] * grad[i];
    theta[i] -= cfg_.lr * (m_[i] / b1c) / (std::sqrt(v_[i] / b2c) + cfg_.eps);
  }
}

void Lbfgs::direction(std::span<const double> g, std::vector<double>& d) const {
  d.assign(g.begin(), g.end());
  const int k = static_cast<int>(s_hist_.size());
  std::vector<double> alpha(static_cast<size_t>(k));
  for (int i = k - 1; i >= 0; --i) {
    alpha[static_cast<size_t>(i)] =
        rho_hist_[static_cast<size_t>(i)] * dot(s_hist_[static_cast<size_t>(i)], d);
    const auto& y = y_hist_[static_cast<size_t>(i)];
    for (size_t j = 0; j < d.size(); ++j)
      d[j] -= alpha[static_cast<size_t>(i)] * y[j];
  }
  if (k > 0) {
    const auto& s = s_hist_.back();
    const auto& y = y_hist_.back();
    const double gamma = dot(s, y) / dot(y, y);
    for (double& dj : d) dj *= gamma;
  }
  for (int i = 0; i < k; ++i) {
    const double beta =
        rho_hist_[static_cast<size_t>(i)] * dot(y_hist_[static_cast<size_t>(i)], d);
    const auto& s = s_hist_[static_cast<size_t>(i)];
    for (size_t j = 0; j < d.size(); ++j)
      d[j] += (alpha[static_cast<size_t>(i)] - beta) * s[j];
  }
  for (double& dj : d) dj = -dj;
}

Lbfgs::Step Lbfgs::iterate(std::vector<double>& x, double& f,
                           std::vector<double>& g, const Objective& obj) {
  Step st;
  x_trial_.resize(n_);
  g_trial_.resize(n_);

  const double phi0 = f;
  double dg0 = 0.0;

  // Strong Wolfe search along d_; leaves the accepted gradient in g_trial_.
  auto search = [&](double alpha0) -> std::optional<std::pair<double, double>> {
    double best_alpha = -1.0, best_phi = phi0;
    auto phi_eval = [&](double a) {
      for (size_t j = 0; j < n_; ++j) x_trial_[j] = x[j] + a * d_[j];
      const double phi = obj(x_trial_, g_trial_);
      ++st.evals;
      const double dphi = dot(g_trial_, d_);
      if (std::isfinite(phi) && phi <= phi0 + cfg_.c1 * a * dg0 &&
          phi < best_phi) {
        best_phi = phi;
        best_alpha = a;
        g_best_ = g_trial_;
      }
      return std::pair{phi, dphi};
    };

    double alpha_prev = 0.0, phi_prev = phi0;
    double alpha = alpha0;
    double lo = -1.0, hi = -1.0, phi_lo = phi0;
    bool have_bracket = false;
    for (int it = 0; st.evals < cfg_.max_line_evals; ++it) {
      const auto [phi, dphi] = phi_eval(alpha);
      if (!std::isfinite(phi) || phi > phi0 + cfg_.c1 * alpha * dg0 ||
          (it > 0 && phi >= phi_prev)) {
        lo = alpha_prev;
        phi_lo = phi_prev;
        hi = alpha;
        have_bracket = true;
        break;
      }
      if (std::abs(dphi) <= -cfg_.c2 * dg0) return std::pair{alpha, phi};
      if (dphi >= 0.0) {
        lo = alpha;
        phi_lo = phi;
        hi = alpha_prev;
        have_bracket = true;
        break;
      }
      alpha_prev = alpha;
      phi_prev = phi;
      alpha *= 2.0;
      if (alpha > 1e12) break;
    }
    if (have_bracket) {
      while (st.evals < cfg_.max_line_evals) {
        const double a = 0.5 * (lo + hi);
        const auto [phi, dphi] = phi_eval(a);
        if (!std::isfinite(phi) || phi > phi0 + cfg_.c1 * a * dg0 ||
            phi >= phi_lo) {
          hi = a;
        } else {
          if (std::abs(dphi) <= -cfg_.c2 * dg0) return std::pair{a, phi};
          if (dphi * (hi - lo) >= 0.0) hi = lo;
          lo = a;
          phi_lo = phi;
        }
        if (std::abs(hi - lo) < 1e-16 * (1.0 + std::abs(lo))) break;
      }
    }
    if (best_alpha > 0.0) {
      g_trial_ = g_best_;
      return std::pair{best_alpha, best_phi};
    }
    return std::nullopt;
  };

  double accepted_alpha = 0.0, accepted_phi = 0.0;
  bool ok = false;
  for (int attempt = 0; attempt < 2 && !ok; ++attempt) {
    const bool steepest = attempt == 1 || s_hist_.empty();
    if (attempt == 0) {
      direction(g, d_);
      dg0 = dot(d_, g);
      if (!(dg0 < 0.0)) {
        if (!s_hist_.empty()) ++fallbacks_;
        for (size_t j = 0; j < n_; ++j) d_[j] = -g[j];
        dg0 = -dot(g, g);
      }
    } else {
      ++fallbacks_;
      for (size_t j = 0; j < n_; ++j) d_[j] = -g[j];
      dg0 = -dot(g, g);
    }
    if (!(dg0 < 0.0)) break;  // gradient is exactly zero
    if (const auto res = search(first_ ? cfg_.first_step : 1.0)) {
      accepted_alpha = res->first;
      accepted_phi = res->second;
      ok = true;
    } else if (steepest) {
      break;  // even steepest descent found no decrease
    }
  }
  if (!ok) {
    st.f = f;
    st.made_progress = false;
    return st;
  }

  std::vector<double> s(n_), y(n_);
  for (size_t j = 0; j < n_; ++j) {
    s[j] = accepted_alpha * d_[j];
    y[j] = g_trial_[j] - g[j];
    x[j] += s[j];
  }
  const double sy = dot(s, y);
  const double sn = std::sqrt(dot(s, s));
  const double yn = std::sqrt(dot(y, y));
  if (sy > 1e-10 * sn * yn) {
    s_hist_.push_back(std::move(s));
    y_hist_.push_back(std::move(y));
    rho_hist_.push_back(1.0 / sy);
    if (static_cast<int>(s_hist_.size()) > cfg_.memory) {
      s_hist_.pop_front();
      y_hist_.pop_front();
      rho_hist_.pop_front();
    }
  }
  g = g_trial_;
  f = accepted_phi;
  first_ = false;
  st.f = accepted_phi;
  st.alpha = accepted_alpha;
  st.made_progress = true;
  return st;
}

}  // namespace mdem
