#pragma once

#include <span>
#include <vector>

namespace cfmimo::sel {

// Orthogonal frequency-domain allocation: per-user subcarrier index sets,
// pairwise disjoint by construction.
struct Allocation {
  std::vector<std::vector<int>> per_user;
};

// Deals the N subcarriers cyclically to K users in proportion to the
// normalized weights (largest-remainder quotas). Equal weights give block
// sizes differing by at most one. Throws when K > N, since every user must
// receive at least one subcarrier.
Allocation allocate_round_robin(int n_subcarriers, int n_users,
                                std::span<const double> weights = {});

// Indices of the m_select largest entries of beta_col, in descending order
// of beta; ties broken by the lower AP index.
std::vector<int> select_aps(std::span<const double> beta_col, int m_select);

// Full-power coefficient for one AP: eta = 1 / sum(alpha over served users).
// Throws if the sum is zero (the AP must be deactivated instead).
double full_power_eta(std::span<const double> alpha_served);

}  // namespace cfmimo::sel
