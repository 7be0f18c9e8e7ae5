#include "tvlab/boxall.hpp"

#include <json.hpp>
#include <deque>

#include "tvlab/lattice.hpp"
#include <set>
#include <sstream>
#include <stdexcept>

namespace tvlab {

using nlohmann::json;

FiniteModule FiniteModule::make(const Int& p, std::vector<int> exponents) {
  if (!is_prime(p)) throw std::invalid_argument("FiniteModule: p must be prime");
  if (exponents.empty()) throw std::invalid_argument("FiniteModule: empty presentation");
  for (int e : exponents)
    if (e < 1) throw std::invalid_argument("FiniteModule: exponents must be >= 1");
  FiniteModule a;
  a.p = p;
  a.exponents = std::move(exponents);
  return a;
}

FiniteModule FiniteModule::parse(const std::string& text) {
  std::vector<int> exps;
  Int p = 0;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    size_t caret = part.find('^');
    Int base(caret == std::string::npos ? part : part.substr(0, caret));
    int e = caret == std::string::npos ? 1 : std::stoi(part.substr(caret + 1));
    if (p == 0) p = base;
    if (base != p) throw std::invalid_argument("FiniteModule: mixed primes in presentation");
    exps.push_back(e);
  }
  return make(p, std::move(exps));
}

Int FiniteModule::module_order() const {
  Int o = 1;
  for (int i = 0; i < rank(); ++i) o *= order(i);
  return o;
}

IntVec FiniteModule::reduce(IntVec v) const {
  for (int i = 0; i < rank(); ++i) v(i) = int_mod(v(i), order(i));
  return v;
}

bool FiniteModule::is_zero(const IntVec& v) const {
  for (int i = 0; i < rank(); ++i)
    if (int_mod(v(i), order(i)) != 0) return false;
  return true;
}

IntVec FiniteModule::scalar(const Int& k, const IntVec& v) const {
  IntVec out = v;
  for (int i = 0; i < rank(); ++i) out(i) = int_mod(k * v(i), order(i));
  return out;
}

IntVec FiniteModule::add(const IntVec& a, const IntVec& b) const {
  IntVec out = a;
  for (int i = 0; i < rank(); ++i) out(i) = int_mod(a(i) + b(i), order(i));
  return out;
}

std::vector<IntVec> FiniteModule::torsion_generators(int j) const {
  std::vector<IntVec> out;
  for (int i = 0; i < rank(); ++i) {
    IntVec e(rank());
    for (int l = 0; l < rank(); ++l) e(l) = 0;
    int drop = std::max(0, exponents[static_cast<size_t>(i)] - j);
    e(i) = int_pow(p, static_cast<unsigned long>(drop));
    out.push_back(std::move(e));
  }
  return out;
}

bool FiniteModule::in_torsion(const IntVec& v, int j) const {
  return is_zero(scalar(int_pow(p, static_cast<unsigned long>(j)), v));
}

std::string FiniteModule::element_to_string(const IntVec& v) const {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < rank(); ++i) {
    if (i) os << ",";
    os << int_mod(v(i), order(i)).get_str();
  }
  os << ")";
  return os.str();
}

ModuleAction ModuleAction::from_json_text(const FiniteModule& a, const std::string& text) {
  json j = json::parse(text);
  ModuleAction act;
  for (const auto& mat : j) {
    IntMat m = int_zero(a.rank(), a.rank());
    if (mat.size() != static_cast<size_t>(a.rank()))
      throw std::invalid_argument("action JSON: row count mismatch");
    for (size_t r = 0; r < mat.size(); ++r) {
      if (mat[r].size() != static_cast<size_t>(a.rank()))
        throw std::invalid_argument("action JSON: column count mismatch");
      for (size_t c = 0; c < mat[r].size(); ++c)
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = Int(mat[r][c].get<long>());
    }
    act.generators.push_back(std::move(m));
  }
  act.validate(a);
  return act;
}

void ModuleAction::validate(const FiniteModule& a) const {
  const int g = a.rank();
  for (const auto& m : generators) {
    if (m.rows() != g || m.cols() != g)
      throw std::invalid_argument("ModuleAction: matrix shape mismatch");
    for (int i = 0; i < g; ++i)
      for (int j = 0; j < g; ++j) {
        int gap = std::max(0, a.exponents[static_cast<size_t>(i)] -
                                  a.exponents[static_cast<size_t>(j)]);
        if (int_mod(m(i, j), int_pow(a.p, static_cast<unsigned long>(gap))) != 0)
          throw std::invalid_argument("ModuleAction: matrix not a well-defined endomorphism");
      }
    if (int_mod(determinant(m), a.p) == 0)
      throw std::invalid_argument("ModuleAction: matrix not invertible");
  }
}

IntVec apply_matrix_mod(const FiniteModule& a, const IntMat& m, const IntVec& v) {
  IntVec out(a.rank());
  for (int i = 0; i < a.rank(); ++i) {
    Int acc = 0;
    for (int j = 0; j < a.rank(); ++j) acc += m(i, j) * v(j);
    out(i) = int_mod(acc, a.order(i));
  }
  return out;
}

namespace {

IntMat canonical_matrix(const FiniteModule& a, const IntMat& m) {
  IntMat out = m;
  for (int i = 0; i < a.rank(); ++i)
    for (int j = 0; j < a.rank(); ++j) out(i, j) = int_mod(m(i, j), a.order(i));
  return out;
}

std::string matrix_key(const IntMat& m) {
  std::string k;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      k += m(i, j).get_str();
      k += ",";
    }
  return k;
}

IntMat matrix_power_mod(const FiniteModule& a, const IntMat& m, Int e) {
  IntMat acc = canonical_matrix(a, int_identity(a.rank()));
  IntMat base = canonical_matrix(a, m);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) acc = canonical_matrix(a, IntMat(acc * base));
    base = canonical_matrix(a, IntMat(base * base));
    e >>= 1;
  }
  return acc;
}

bool fixes(const FiniteModule& a, const IntMat& m, const IntVec& v) {
  return a.is_zero(apply_matrix_mod(a, m, v) - v);
}

}  // namespace

bool check_hypotheses(const FiniteModule& a, const ModuleAction& action) {
  action.validate(a);
  std::vector<IntVec> gens = a.torsion_generators(1);
  if (a.p == 2) {
    auto g4 = a.torsion_generators(2);
    gens.insert(gens.end(), g4.begin(), g4.end());
  }
  for (const auto& m : action.generators)
    for (const auto& v : gens)
      if (!fixes(a, m, v)) return false;
  return true;
}

std::vector<IntMat> enumerate_group(const FiniteModule& a, const ModuleAction& action,
                                    size_t cap) {
  std::vector<IntMat> elems;
  std::set<std::string> seen;
  std::deque<IntMat> queue;
  IntMat id = canonical_matrix(a, int_identity(a.rank()));
  queue.push_back(id);
  seen.insert(matrix_key(id));
  while (!queue.empty()) {
    IntMat cur = queue.front();
    queue.pop_front();
    elems.push_back(cur);
    if (elems.size() > cap) throw std::domain_error("enumerate_group: group exceeds cap");
    for (const auto& g : action.generators) {
      IntMat next = canonical_matrix(a, IntMat(g * cur));
      std::string key = matrix_key(next);
      if (!seen.count(key)) {
        seen.insert(key);
        queue.push_back(next);
      }
    }
  }
  return elems;
}

BoxallWitness boxall_construct(const FiniteModule& a, const ModuleAction& action,
                               const IntVec& q_in) {
  if (!check_hypotheses(a, action))
    throw std::domain_error("boxall_construct: hypotheses violated (A[p] not fixed)");
  IntVec q = a.reduce(q_in);

  // Minimal n with [p^n] Q fixed by every generator.
  int n = 0;
  while (true) {
    IntVec qn = a.scalar(int_pow(a.p, static_cast<unsigned long>(n)), q);
    bool fixed = true;
    for (const auto& g : action.generators) fixed = fixed && fixes(a, g, qn);
    if (fixed) break;
    ++n;
    if (n > 64) throw std::logic_error("boxall_construct: runaway torsion level");
  }
  if (n == 0)
    throw std::domain_error("boxall_construct: Q is fixed by the action, no sigma exists");

  // First breadth-first word moving [p^(n-1)] Q.
  IntVec qn1 = a.scalar(int_pow(a.p, static_cast<unsigned long>(n - 1)), q);
  IntMat sigma1 = int_identity(a.rank());
  std::vector<int> word;
  {
    struct Node {
      IntMat m;
      std::vector<int> w;
    };
    std::deque<Node> queue;
    std::set<std::string> seen;
    IntMat id = canonical_matrix(a, int_identity(a.rank()));
    queue.push_back({id, {}});
    seen.insert(matrix_key(id));
    bool found = false;
    while (!queue.empty() && !found) {
      Node cur = queue.front();
      queue.pop_front();
      if (!fixes(a, cur.m, qn1)) {
        sigma1 = cur.m;
        word = cur.w;
        found = true;
        break;
      }
      for (size_t gi = 0; gi < action.generators.size(); ++gi) {
        IntMat next = canonical_matrix(a, IntMat(action.generators[gi] * cur.m));
        std::string key = matrix_key(next);
        if (!seen.count(key)) {
          seen.insert(key);
          std::vector<int> w = cur.w;
          w.push_back(static_cast<int>(gi));
          queue.push_back({next, std::move(w)});
        }
      }
    }
    if (!found) throw std::logic_error("boxall_construct: no word moves [p^(n-1)]Q");
  }

  BoxallWitness wit;
  wit.base_word = word;
  wit.n = n;
  wit.power = int_pow(a.p, static_cast<unsigned long>(n - 1));
  wit.sigma = matrix_power_mod(a, sigma1, wit.power);
  wit.x = a.reduce(apply_matrix_mod(a, wit.sigma, q) - q);

  // The proof's chain: x_i = (sigma_i - 1)(Q_i) stays constant, and the
  // intermediate relations hold.
  IntVec x1(a.rank());
  for (int i = 1; i <= n; ++i) {
    IntMat sigma_i = matrix_power_mod(a, sigma1, int_pow(a.p, static_cast<unsigned long>(i - 1)));
    IntVec qi = a.scalar(int_pow(a.p, static_cast<unsigned long>(n - i)), q);
    IntVec xi = a.reduce(apply_matrix_mod(a, sigma_i, qi) - qi);
    if (i == 1) {
      x1 = xi;
      if (a.is_zero(x1) || !a.in_torsion(x1, 1))
        throw std::logic_error("boxall_construct: x_1 not in A[p] \\ {0}");
    } else if (!a.is_zero(xi - x1)) {
      throw std::logic_error("boxall_construct: proof chain x_i = x_1 violated");
    }
    if (i < n) {
      IntVec qi1 = a.scalar(int_pow(a.p, static_cast<unsigned long>(n - i - 1)), q);
      IntVec d = a.reduce(apply_matrix_mod(a, sigma_i, qi1) - qi1);
      // (sigma_i - 1)^3 Q_{i+1} = 0.
      IntVec d2 = a.reduce(apply_matrix_mod(a, sigma_i, d) - d);
      IntVec d3 = a.reduce(apply_matrix_mod(a, sigma_i, d2) - d2);
      if (!a.is_zero(d3))
        throw std::logic_error("boxall_construct: (sigma_i - 1)^3 Q_{i+1} != 0");
      if (a.p == 2 && !a.in_torsion(d, 2))
        throw std::logic_error("boxall_construct: (sigma_i - 1) Q_{i+1} not in A[4]");
    }
  }
  if (a.is_zero(wit.x) || !a.in_torsion(wit.x, 1))
    throw std::logic_error("boxall_construct: output not in A[p] \\ {0}");
  return wit;
}

std::vector<BoxallOracleEntry> boxall_oracle(const FiniteModule& a, const ModuleAction& action,
                                             const IntVec& q_in, size_t group_cap) {
  IntVec q = a.reduce(q_in);
  std::vector<BoxallOracleEntry> out;
  for (const auto& m : enumerate_group(a, action, group_cap)) {
    IntVec x = a.reduce(apply_matrix_mod(a, m, q) - q);
    if (!a.is_zero(x) && a.in_torsion(x, 1)) out.push_back({m, x});
  }
  return out;
}

}  // namespace tvlab
