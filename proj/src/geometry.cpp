#include "swiss/geometry.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "swiss/rng.hpp"

namespace swiss {

namespace {

// Flat view of (annulus index, disc index, disc) for cross-annulus scans.
struct FlatDisc {
  int annulus;
  std::size_t index;
  const Disc* disc;
};

std::vector<FlatDisc> flatten(const SwissCheese& cheese) {
  std::vector<FlatDisc> out;
  for (const auto& a : cheese.annuli) {
    for (std::size_t i = 0; i < a.discs.size(); ++i) {
      out.push_back({a.n, i, &a.discs[i]});
    }
  }
  return out;
}

bool closures_disjoint(const Disc& a, const Disc& b, double gap) {
  const double dx = a.center.real() - b.center.real();
  const double dy = a.center.imag() - b.center.imag();
  const double need = a.radius + b.radius + gap;
  return dx * dx + dy * dy > need * need;
}

}  // namespace

double annulus_budget(double C, int n) {
  if (!(C > 0.0)) throw std::invalid_argument("annulus_budget: C must be positive");
  if (n < 1) throw std::invalid_argument("annulus_budget: n must be >= 1");
  const double rn = static_cast<double>(n - 1) / static_cast<double>(n);
  const double one_minus = 1.0 - rn;
  return C * one_minus * one_minus / (std::ldexp(1.0, n + 3) * std::numbers::pi);
}

SwissCheese generate_cheese(double C, int annuli_count, int discs_per_annulus,
                            std::uint64_t seed) {
  if (!(C > 0.0)) throw std::invalid_argument("generate_cheese: C must be positive");
  if (annuli_count < 1) throw std::invalid_argument("generate_cheese: annuli_count must be >= 1");
  if (discs_per_annulus < 1) {
    throw std::invalid_argument("generate_cheese: discs_per_annulus must be >= 1");
  }

  SwissCheese cheese;
  cheese.C = C;
  cheese.seed = seed;
  Rng rng(splitmix64(seed ^ 0x5377697373ULL));

  std::vector<Disc> placed;
  for (int n = 1; n <= annuli_count; ++n) {
    AnnulusRecord rec;
    rec.n = n;
    rec.R_n = static_cast<double>(n - 1) / static_cast<double>(n);
    rec.budget = annulus_budget(C, n);
    if (n >= 2) {
      // Nominal per-disc radius keeps the annulus radius sum at 0.9 * budget.
      const double nominal = 0.9 * rec.budget / static_cast<double>(discs_per_annulus);
      for (int k = 0; k < discs_per_annulus; ++k) {
        double rho = nominal;
        bool done = false;
        for (int halving = 0; halving <= 8 && !done; ++halving) {
          if (rho >= rec.R_n) {  // no room for a disc this large in the region
            rho *= 0.5;
            continue;
          }
          for (int attempt = 0; attempt < 64 && !done; ++attempt) {
            Disc cand{rng.in_disc(Complex(0.0, 0.0), rec.R_n - rho), rho};
            bool ok = true;
            for (const auto& other : placed) {
              if (!closures_disjoint(cand, other, 1e-9)) {
                ok = false;
                break;
              }
            }
            if (ok) {
              rec.discs.push_back(cand);
              placed.push_back(cand);
              done = true;
            }
          }
          if (!done) rho *= 0.5;
        }
        if (!done) {
          std::ostringstream msg;
          msg << "generate_cheese: could not place disc " << k << " in annulus " << n
              << " after 8 radius halvings";
          throw ConstructionError(msg.str(), n);
        }
      }
    }
    cheese.annuli.push_back(std::move(rec));
  }
  return cheese;
}

double lemma21_sum(const SwissCheese& cheese) {
  double sum = 0.0;
  for (const auto& a : cheese.annuli) {
    for (const auto& d : a.discs) {
      const double s = d.dist_to_T();
      sum += d.radius / (s * s);
    }
  }
  return sum;
}

double certified_bound(const SwissCheese& cheese) {
  return 4.0 * std::numbers::pi * lemma21_sum(cheese);
}

std::vector<std::string> validate(const SwissCheese& cheese) {
  std::vector<std::string> violations;
  auto flat = flatten(cheese);

  for (const auto& a : cheese.annuli) {
    const double expect_R = static_cast<double>(a.n - 1) / static_cast<double>(a.n);
    if (a.n < 1) {
      violations.push_back("annulus index must be >= 1, got " + std::to_string(a.n));
      continue;
    }
    if (a.R_n != expect_R) {
      std::ostringstream msg;
      msg << "annulus " << a.n << ": R_n != (n-1)/n";
      violations.push_back(msg.str());
    }
    if (cheese.C > 0.0 && a.budget != annulus_budget(cheese.C, a.n)) {
      std::ostringstream msg;
      msg << "annulus " << a.n << ": budget != C(1-R_n)^2/(2^(n+3) pi)";
      violations.push_back(msg.str());
    }
    double radius_sum = 0.0;
    for (std::size_t i = 0; i < a.discs.size(); ++i) {
      const Disc& d = a.discs[i];
      if (!(d.radius > 0.0)) {
        std::ostringstream msg;
        msg << "annulus " << a.n << " disc " << i << ": radius must be positive";
        violations.push_back(msg.str());
        continue;
      }
      radius_sum += d.radius;
      if (!(std::abs(d.center) + d.radius < 1.0)) {
        std::ostringstream msg;
        msg << "annulus " << a.n << " disc " << i
            << ": closure not contained in the open unit disc";
        violations.push_back(msg.str());
      }
      if (std::abs(d.center) + d.radius > a.R_n) {
        std::ostringstream msg;
        msg << "annulus " << a.n << " disc " << i
            << ": closure leaves the closed disc of radius R_n";
        violations.push_back(msg.str());
      }
      // Independent statement of the T-disjointness invariant.
      if (!(d.dist_to_T() > 0.0)) {
        std::ostringstream msg;
        msg << "annulus " << a.n << " disc " << i << ": deleted disc touches the unit circle";
        violations.push_back(msg.str());
      }
    }
    if (!a.discs.empty() && !(radius_sum < a.budget)) {
      std::ostringstream msg;
      msg << "annulus " << a.n << ": disc radius sum " << radius_sum
          << " not below budget " << a.budget;
      violations.push_back(msg.str());
    }
  }

  for (std::size_t i = 0; i < flat.size(); ++i) {
    for (std::size_t j = i + 1; j < flat.size(); ++j) {
      if (!closures_disjoint(*flat[i].disc, *flat[j].disc, 0.0)) {
        std::ostringstream msg;
        msg << "disjointness: annulus " << flat[i].annulus << " disc " << flat[i].index
            << " overlaps annulus " << flat[j].annulus << " disc " << flat[j].index;
        violations.push_back(msg.str());
      }
    }
  }
  return violations;
}

double distance_to_X(Complex p, const SwissCheese& cheese) {
  const double ap = std::abs(p);
  if (ap > 1.0) return ap - 1.0;
  for (const auto& a : cheese.annuli) {
    for (const auto& d : a.discs) {
      const double dist = std::abs(p - d.center);
      if (dist < d.radius) return d.radius - dist;
    }
  }
  return 0.0;
}

nlohmann::ordered_json cheese_to_json(const SwissCheese& cheese) {
  nlohmann::ordered_json j;
  j["C"] = cheese.C;
  j["seed"] = cheese.seed;
  auto annuli = nlohmann::ordered_json::array();
  for (const auto& a : cheese.annuli) {
    nlohmann::ordered_json ja;
    ja["n"] = a.n;
    ja["R_n"] = a.R_n;
    ja["budget"] = a.budget;
    auto discs = nlohmann::ordered_json::array();
    for (const auto& d : a.discs) {
      nlohmann::ordered_json jd;
      jd["re"] = d.center.real();
      jd["im"] = d.center.imag();
      jd["r"] = d.radius;
      discs.push_back(std::move(jd));
    }
    ja["discs"] = std::move(discs);
    annuli.push_back(std::move(ja));
  }
  j["annuli"] = std::move(annuli);
  return j;
}

SwissCheese cheese_from_json(const nlohmann::ordered_json& j) {
  SwissCheese cheese;
  cheese.C = j.at("C").get<double>();
  cheese.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& ja : j.at("annuli")) {
    AnnulusRecord rec;
    rec.n = ja.at("n").get<int>();
    rec.R_n = ja.at("R_n").get<double>();
    rec.budget = ja.at("budget").get<double>();
    for (const auto& jd : ja.at("discs")) {
      Disc d;
      d.center = Complex(jd.at("re").get<double>(), jd.at("im").get<double>());
      d.radius = jd.at("r").get<double>();
      rec.discs.push_back(d);
    }
    cheese.annuli.push_back(std::move(rec));
  }
  return cheese;
}

}  // namespace swiss
