#include "cfmimo/selection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cfmimo::sel {

Allocation allocate_round_robin(int n_subcarriers, int n_users,
                                std::span<const double> weights) {
  if (n_users < 1 || n_subcarriers < 1) {
    throw std::invalid_argument("allocation: need at least one user and subcarrier");
  }
  if (n_users > n_subcarriers) {
    throw std::invalid_argument(
        "allocation infeasible: more users than subcarriers");
  }
  if (!weights.empty() && static_cast<int>(weights.size()) != n_users) {
    throw std::invalid_argument("allocation: one weight per user required");
  }

  // Quotas: one guaranteed subcarrier per user, remainder split in
  // proportion to the weights by largest remainder.
  std::vector<double> w(n_users, 1.0);
  if (!weights.empty()) {
    double sum = 0.0;
    for (int k = 0; k < n_users; ++k) {
      if (weights[k] < 0.0) throw std::invalid_argument("negative rate weight");
      sum += weights[k];
    }
    if (sum <= 0.0) throw std::invalid_argument("rate weights sum to zero");
    for (int k = 0; k < n_users; ++k) w[k] = weights[k] / sum;
  } else {
    for (auto& v : w) v = 1.0 / n_users;
  }

  const int spare = n_subcarriers - n_users;
  std::vector<int> quota(n_users, 1);
  std::vector<std::pair<double, int>> remainder(n_users);
  int assigned = 0;
  for (int k = 0; k < n_users; ++k) {
    const double share = spare * w[k];
    quota[k] += static_cast<int>(std::floor(share));
    assigned += static_cast<int>(std::floor(share));
    remainder[k] = {share - std::floor(share), k};
  }
  std::stable_sort(remainder.begin(), remainder.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (int i = 0; i < spare - assigned; ++i) ++quota[remainder[i].second];

  Allocation alloc;
  alloc.per_user.resize(n_users);
  std::vector<int> left = quota;
  int user = 0;
  for (int n = 0; n < n_subcarriers; ++n) {
    while (left[user] == 0) user = (user + 1) % n_users;
    alloc.per_user[user].push_back(n);
    --left[user];
    user = (user + 1) % n_users;
  }
  return alloc;
}

std::vector<int> select_aps(std::span<const double> beta_col, int m_select) {
  const int m = static_cast<int>(beta_col.size());
  if (m_select < 1 || m_select > m) {
    throw std::domain_error("select_aps: m_select out of [1, M]");
  }
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  // stable sort keeps the lower index first among equal gains
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return beta_col[a] > beta_col[b]; });
  order.resize(m_select);
  return order;
}

double full_power_eta(std::span<const double> alpha_served) {
  double sum = 0.0;
  for (double a : alpha_served) {
    if (a < 0.0) throw std::domain_error("full_power_eta: negative alpha");
    sum += a;
  }
  if (sum <= 0.0) {
    throw std::domain_error(
        "full_power_eta: zero alpha sum, AP must be deactivated");
  }
  return 1.0 / sum;
}

}  // namespace cfmimo::sel
