#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace cpdirac {

/// The nine CP-symmetric potential families of the catalog plus user-defined.
enum class Family {
  OddPower,    // A (mu x)^(2n+1)
  Sinh,        // A sinh(mu x)
  Sin,         // A sin(mu x)
  Asinh,       // A asinh(mu x)
  XLog,        // A (mu x) ln((mu x)^2)
  Exp,         // A exp(-mu x)
  XExp,        // A (mu x) exp(-mu x)
  X2Exp,       // A (mu x)^2 exp(-mu x)
  Lorentzian,  // A (1 + mu x) / (1 + (mu x)^2)
  Custom,
};

enum class Subclass { OddParity, NoDefiniteParity };
enum class Branch { Plus, Minus };

std::string_view family_name(Family f);
Family family_from_name(std::string_view name);  // throws on unknown name

/// One catalog row with machine-checkable metadata and display formulas.
struct CatalogRow {
  Family family;
  Subclass subclass;
  std::string name;
  std::string w_tex;
  std::string rho_tex;
  std::string r_tex;
  std::string remark;
  std::string constraint;  // "mu*A > 0", "mu*A < 0" or "" (none)
  bool localized;
};

/// All nine potential families (five odd-parity, four without definite parity).
const std::vector<CatalogRow>& catalog();

/// A potential W(x) with parameters, parity metadata, and the closed-form
/// envelope machinery where the catalog provides it.  Immutable after
/// construction; all evaluations are pure and thread-safe.
class PotentialInstance {
 public:
  Family family = Family::Custom;
  double amplitude = 0.0;  // coupling strength A, units of mass
  double mu = 1.0;         // inverse length scale, units of mass
  int n = 0;               // exponent index for the odd-power family
  Subclass subclass = Subclass::NoDefiniteParity;
  bool localized_expected = false;
  bool conforming = true;  // parameter constraint from the catalog remarks
  std::string constraint_text;

  double w(double x) const;
  double w_mirror(double x) const { return w(-x); }  // the partner U(x) = W(-x)
  double w_prime(double x) const;

  double even_part(double x) const;        // R(x) = (W(x) + W(-x)) / 2
  double even_part_prime(double x) const;  // R'(x)
  double odd_part(double x) const;         // (W(x) - W(-x)) / 2

  /// Envelope exponent.  Catalog families use the printed antiderivative
  /// (which in general does not vanish at x = 0); custom potentials integrate
  /// the odd part from 0.  The additive constant is a pure gauge.
  double rho(double x) const;
  bool has_closed_form_rho() const;
  /// Independent route: rho(0) + Simpson integral of W - W(-y) from 0 to x.
  double rho_from_quadrature(double x) const;

  /// (R^2 +/- R')/2, the supersymmetric-style effective potential.
  double effective_potential(double x, Branch branch) const;

  /// Label such as "exp(A=-1, mu=0.2)" for reports and provenance records.
  std::string label() const;

  static PotentialInstance custom(std::function<double(double)> w,
                                  double length_scale = 1.0);

 private:
  std::function<double(double)> custom_w_;
};

/// Builds a catalog-family instance.  A constraint violation (e.g. mu*A <= 0
/// where the remarks require mu*A > 0) flags the instance non-conforming but
/// does not fail; mu == 0 or a non-finite parameter is an error.
PotentialInstance make_potential(Family family, double amplitude, double mu,
                                 int n = 0);

/// Callable even/odd split of W plus the envelope exponent.
struct CPDecomposition {
  std::function<double(double)> even_part;  // R
  std::function<double(double)> odd_part;
  std::function<double(double)> rho;
};

CPDecomposition decompose(const PotentialInstance& p);

/// Smallest half-width L with rho(L) - min rho >= threshold, i.e. envelope
/// suppression exp(-threshold/2) at the box edge.  The Sin family (bounded
/// rho) gets the fixed oscillatory window 4*pi/mu.  Throws if the envelope
/// never reaches the threshold (non-localized potential).
double envelope_box_half_width(const PotentialInstance& p,
                               double threshold = 28.0);

}  // namespace cpdirac
