#include "g2flow/lie_algebra.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>

#include "g2flow/errors.hpp"
#include "g2flow/tolerance.hpp"

namespace g2flow {

namespace {

/// d of a single basis form e^I by the graded Leibniz rule:
/// d e^I = sum_r (-1)^{r-1} e^{i_1...} ^ d e^{i_r} ^ e^{...i_k}.
KForm d_basis_term(const std::vector<KForm>& duals, int dim, Mask mask, double c) {
  KForm out(dim, mask_degree(mask) + 1);
  Mask rest = mask;
  int r = 0;  // 0-based slot position
  while (rest != 0) {
    const int p = std::countr_zero(rest);
    rest &= rest - 1;
    const KForm& dp = duals[p];
    if (!dp.is_zero()) {
      const Mask prefix = mask & ((1u << p) - 1u);
      const Mask suffix = mask & ~((1u << (p + 1)) - 1u);
      const double slot_sign = (r % 2 == 0) ? 1.0 : -1.0;
      KForm::Terms t;
      for (const auto& [dm, dc] : dp.terms()) {
        const int s1 = merge_sign(prefix, dm);
        if (s1 == 0) continue;
        const int s2 = merge_sign(prefix | dm, suffix);
        if (s2 == 0) continue;
        t[prefix | dm | suffix] += s1 * s2 * dc;
      }
      out = out + slot_sign * c * KForm(dim, mask_degree(mask) + 1, std::move(t));
    }
    ++r;
  }
  return out;
}

KForm ce_d(const std::vector<KForm>& duals, const KForm& a) {
  const int dim = static_cast<int>(duals.size());
  KForm out(dim, a.degree() + 1);
  if (a.degree() >= dim) return out;
  for (const auto& [mask, c] : a.terms())
    out = out + d_basis_term(duals, dim, mask, c);
  return out;
}

}  // namespace

LieAlgebra::LieAlgebra(std::vector<KForm> dual_differentials, std::string name)
    : duals_(std::move(dual_differentials)), name_(std::move(name)) {
  const int n = static_cast<int>(duals_.size());
  if (n < 1 || n > 8)
    throw ValidationError("algebra dimension must be in 1..8");
  for (const KForm& f : duals_) {
    if (f.dim() != n || f.degree() != 2)
      throw ValidationError("dual differentials must be 2-forms on the algebra");
  }
  // Jacobi identity == d^2 = 0 on generators.
  for (int k = 0; k < n; ++k) {
    const KForm dd = ce_d(duals_, duals_[k]);
    if (dd.max_abs_coeff() > global_tolerance()) {
      Mask worst = 0;
      double worst_c = 0.0;
      for (const auto& [mask, c] : dd.terms())
        if (std::abs(c) > std::abs(worst_c)) { worst = mask; worst_c = c; }
      std::string idx;
      for (int i : mask_to_indices(worst)) idx += std::to_string(i);
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.3e", worst_c);
      throw ValidationError("Jacobi identity fails: d(d e^" + std::to_string(k + 1) +
                            ") has coefficient " + buf + " at e^" + idx);
    }
  }
}

const KForm& LieAlgebra::dual_differential(int k) const {
  if (k < 1 || k > dim())
    throw ValidationError("dual index out of range");
  return duals_[k - 1];
}

KForm LieAlgebra::d(const KForm& a) const {
  if (a.dim() != dim())
    throw ValidationError("form does not live on this algebra");
  return ce_d(duals_, a);
}

Eigen::VectorXd LieAlgebra::bracket(int i, int j) const {
  const int n = dim();
  if (i < 1 || i > n || j < 1 || j > n)
    throw ValidationError("bracket index out of range");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  if (i == j) return out;
  const double sign = (i < j) ? 1.0 : -1.0;
  const Mask m = (1u << (std::min(i, j) - 1)) | (1u << (std::max(i, j) - 1));
  for (int k = 0; k < n; ++k) out[k] = -sign * duals_[k].coeff(m);
  return out;
}

Eigen::VectorXd LieAlgebra::bracket(const Eigen::VectorXd& x,
                                    const Eigen::VectorXd& y) const {
  const int n = dim();
  if (x.size() != n || y.size() != n)
    throw ValidationError("bracket operands have wrong dimension");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      const double w = x[i - 1] * y[j - 1] - x[j - 1] * y[i - 1];
      if (w != 0.0) out += w * bracket(i, j);
    }
  return out;
}

double LieAlgebra::jacobi_residual() const {
  double r = 0.0;
  for (const KForm& f : duals_) r = std::max(r, ce_d(duals_, f).max_abs_coeff());
  return r;
}

bool LieAlgebra::is_unimodular() const {
  const int n = dim();
  for (int j = 1; j <= n; ++j) {
    double tr = 0.0;
    for (int k = 1; k <= n; ++k) tr += bracket(j, k)[k - 1];
    if (std::abs(tr) > global_tolerance()) return false;
  }
  return true;
}

namespace {

/// Orthonormal basis of span{brackets of column pairs}; empty when zero.
Eigen::MatrixXd bracket_span(const LieAlgebra& L, const Eigen::MatrixXd& A,
                             const Eigen::MatrixXd& B) {
  const int n = L.dim();
  const auto ca = static_cast<int>(A.cols());
  const auto cb = static_cast<int>(B.cols());
  if (ca == 0 || cb == 0) return Eigen::MatrixXd(n, 0);
  Eigen::MatrixXd gens(n, ca * cb);
  int c = 0;
  for (int a = 0; a < ca; ++a)
    for (int b = 0; b < cb; ++b) gens.col(c++) = L.bracket(A.col(a), B.col(b));
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(gens);
  qr.setThreshold(1e-10);
  const auto rank = static_cast<int>(qr.rank());
  if (rank == 0) return Eigen::MatrixXd(n, 0);
  const Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(n, rank);
  return Q;
}

}  // namespace

bool LieAlgebra::is_solvable() const {
  Eigen::MatrixXd span = Eigen::MatrixXd::Identity(dim(), dim());
  while (true) {
    const Eigen::MatrixXd next = bracket_span(*this, span, span);
    if (next.cols() == 0) return true;
    if (next.cols() >= span.cols()) return false;
    span = next;
  }
}

bool LieAlgebra::is_nilpotent() const {
  const Eigen::MatrixXd whole = Eigen::MatrixXd::Identity(dim(), dim());
  Eigen::MatrixXd span = whole;
  while (true) {
    const Eigen::MatrixXd next = bracket_span(*this, whole, span);
    if (next.cols() == 0) return true;
    if (next.cols() >= span.cols()) return false;
    span = next;
  }
}

LieAlgebra LieAlgebra::extend_by_line(const std::string& name) const {
  const int n = dim();
  std::vector<KForm> duals;
  duals.reserve(n + 1);
  for (const KForm& f : duals_) {
    KForm::Terms t = f.terms();
    duals.emplace_back(n + 1, 2, std::move(t));
  }
  duals.emplace_back(n + 1, 2);
  return LieAlgebra(std::move(duals), name.empty() ? name_ + "+R" : name);
}

// --------------------------------------------------------------------------
// Structure-equation text format
//
//   tuple  := '(' entry (',' entry)* ')'
//   entry  := sum of signed terms | '0'
//   term   := factor* basis        (factors multiply; '*' optional)
//   factor := number | number '/' number | 'sqrt' '(' number ')' | identifier
//   basis  := 'e' digit digit      (1-based indices, distinct)
// --------------------------------------------------------------------------

namespace {

class Parser {
 public:
  Parser(const std::string& text, const std::map<std::string, double>& params)
      : text_(text), params_(params) {}

  std::vector<KForm> run() {
    skip_ws();
    expect('(');
    // First pass: split on commas at depth 0 to learn the dimension, then
    // parse each entry as a 2-form of that dimension.
    std::vector<std::string> entries;
    std::vector<size_t> offsets;
    size_t depth = 0, start = pos_;
    for (size_t i = pos_; i < text_.size(); ++i) {
      const char ch = text_[i];
      if (ch == '(') ++depth;
      else if (ch == ')') {
        if (depth == 0) {
          entries.push_back(text_.substr(start, i - start));
          offsets.push_back(start);
          pos_ = i + 1;
          goto parsed;
        }
        --depth;
      } else if (ch == ',' && depth == 0) {
        entries.push_back(text_.substr(start, i - start));
        offsets.push_back(start);
        start = i + 1;
      }
    }
    fail(pos_, "unterminated tuple: expected ')'");
  parsed:
    skip_ws();
    if (pos_ != text_.size())
      fail(pos_, "trailing characters after tuple");
    const int dim = static_cast<int>(entries.size());
    if (dim < 1 || dim > 8)
      fail(0, "tuple must have between 1 and 8 entries");
    std::vector<KForm> duals;
    duals.reserve(dim);
    for (int k = 0; k < dim; ++k)
      duals.push_back(EntryParser(entries[k], offsets[k], dim, params_).run());
    return duals;
  }

 private:
  class EntryParser {
   public:
    EntryParser(const std::string& text, size_t base, int dim,
                const std::map<std::string, double>& params)
        : text_(text), base_(base), dim_(dim), params_(params) {}

    KForm run() {
      KForm::Terms terms;
      skip_ws();
      if (at_end()) fail("empty entry");
      bool first = true;
      while (!at_end()) {
        double sign = 1.0;
        skip_ws();
        if (peek() == '+' || peek() == '-') {
          if (peek() == '-') sign = -1.0;
          ++pos_;
        } else if (!first) {
          fail("expected '+' or '-' between terms");
        }
        parse_term(sign, terms);
        skip_ws();
        first = false;
      }
      return KForm(dim_, 2, std::move(terms));
    }

   private:
    void parse_term(double sign, KForm::Terms& terms) {
      skip_ws();
      double coeff = sign;
      bool have_factor = false;
      while (true) {
        skip_ws();
        if (at_end()) break;
        const char ch = peek();
        if (ch == 'e' && pos_ + 1 < text_.size() &&
            std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
          // basis 2-form terminates the factor chain
          coeff *= 1.0;
          parse_basis(coeff, terms);
          return;
        }
        if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
          coeff *= parse_number();
          have_factor = true;
        } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
          const std::string ident = parse_ident();
          if (ident == "sqrt") {
            skip_ws();
            if (at_end() || peek() != '(') fail("expected '(' after sqrt");
            ++pos_;
            skip_ws();
            const double v = parse_number();
            if (v < 0.0) fail("sqrt of a negative number");
            skip_ws();
            if (at_end() || peek() != ')') fail("expected ')' closing sqrt");
            ++pos_;
            coeff *= std::sqrt(v);
          } else {
            auto it = params_.find(ident);
            if (it == params_.end())
              fail("unbound parameter '" + ident + "'");
            coeff *= it->second;
          }
          have_factor = true;
        } else {
          fail(std::string("unexpected character '") + ch + "'");
        }
        skip_ws();
        if (!at_end() && peek() == '*') ++pos_;  // optional explicit product
        else if (!at_end() && (peek() == '+' || peek() == '-')) break;
      }
      // A term without a basis 2-form must be the literal zero entry.
      if (!have_factor || coeff != 0.0) {
        if (have_factor && coeff == 0.0) return;
        fail("expected a basis 2-form such as e12");
      }
    }

    void parse_basis(double coeff, KForm::Terms& terms) {
      ++pos_;  // consume 'e'
      std::string digits;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek())))
        digits += text_[pos_++];
      if (digits.size() != 2)
        fail("basis 2-form must have exactly two index digits, got 'e" + digits + "'");
      const int i = digits[0] - '0';
      const int j = digits[1] - '0';
      if (i < 1 || i > dim_ || j < 1 || j > dim_)
        fail("basis index out of range 1.." + std::to_string(dim_) + " in 'e" + digits + "'");
      if (i == j) fail("repeated index in 'e" + digits + "'");
      const Mask m = (1u << (i - 1)) | (1u << (j - 1));
      terms[m] += (i < j) ? coeff : -coeff;
    }

    double parse_number() {
      const size_t start = pos_;
      while (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) ||
                           peek() == '.'))
        ++pos_;
      if (pos_ == start) fail("expected a number");
      // Exponent suffix is intentionally not supported: 'e' starts a basis form.
      double value = 0.0;
      try {
        value = std::stod(text_.substr(start, pos_ - start));
      } catch (const std::exception&) {
        fail("malformed number '" + text_.substr(start, pos_ - start) + "'");
      }
      skip_ws();
      if (!at_end() && peek() == '/') {
        ++pos_;
        skip_ws();
        const size_t dstart = pos_;
        while (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) ||
                             peek() == '.'))
          ++pos_;
        if (pos_ == dstart) fail("expected a denominator after '/'");
        double den = 0.0;
        try {
          den = std::stod(text_.substr(dstart, pos_ - dstart));
        } catch (const std::exception&) {
          fail("malformed denominator");
        }
        if (den == 0.0) fail("division by zero in coefficient");
        value /= den;
      }
      return value;
    }

    std::string parse_ident() {
      const size_t start = pos_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) ||
                           peek() == '_'))
        ++pos_;
      return text_.substr(start, pos_ - start);
    }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    void skip_ws() {
      while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }
    [[noreturn]] void fail(const std::string& msg) const {
      throw ParseError("structure equations, position " +
                       std::to_string(base_ + pos_) + ": " + msg);
    }

    const std::string& text_;
    size_t base_;
    int dim_;
    const std::map<std::string, double>& params_;
    size_t pos_ = 0;
  };

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }
  void expect(char ch) {
    if (pos_ >= text_.size() || text_[pos_] != ch)
      fail(pos_, std::string("expected '") + ch + "'");
    ++pos_;
  }
  [[noreturn]] static void fail(size_t pos, const std::string& msg) {
    throw ParseError("structure equations, position " + std::to_string(pos) +
                     ": " + msg);
  }

  const std::string& text_;
  const std::map<std::string, double>& params_;
  size_t pos_ = 0;
};

std::string format_coefficient(double c) {
  const double mag = std::abs(c);
  if (mag == 1.0) return c < 0 ? "-" : "";
  char buf[40];
  if (mag == std::floor(mag) && mag < 1e15)
    std::snprintf(buf, sizeof buf, "%.0f", c);
  else
    std::snprintf(buf, sizeof buf, "%.17g", c);
  return std::string(buf) + "*";
}

}  // namespace

LieAlgebra parse_structure_equations(const std::string& text,
                                     const std::map<std::string, double>& params,
                                     const std::string& name) {
  return LieAlgebra(Parser(text, params).run(), name);
}

std::string print_structure_equations(const LieAlgebra& L) {
  std::string out = "(";
  for (int k = 1; k <= L.dim(); ++k) {
    if (k > 1) out += ",";
    const KForm& f = L.dual_differential(k);
    if (f.is_zero()) {
      out += "0";
      continue;
    }
    bool first = true;
    for (const auto& [mask, c] : f.terms()) {
      if (!first && c > 0) out += "+";
      out += format_coefficient(c);
      out += "e";
      for (int i : mask_to_indices(mask)) out += std::to_string(i);
      first = false;
    }
  }
  out += ")";
  return out;
}

}  // namespace g2flow
