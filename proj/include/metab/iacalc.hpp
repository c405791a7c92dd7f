#pragma once

// IA-endomorphisms gamma_r(x_i) = [x1,x2]^{r_i} x_i of the Magnus model,
// their Bachmuth matrices and determinants, and the generalized
// determinant of arbitrary endomorphisms given by generator images.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "metab/grpring.hpp"
#include "metab/magnus.hpp"

namespace metab {

struct IAEndo {
  RingElem r1;
  RingElem r2;
  bool operator==(const IAEndo&) const = default;
};

IAEndo ia_identity(const RingCtx& ctx);

/// 2x2 matrix over R; column i is the image of t_i.
struct BachmuthMatrix {
  RingElem a11, a12, a21, a22;
  bool operator==(const BachmuthMatrix&) const = default;
};

BachmuthMatrix matrix_mul(const BachmuthMatrix& x, const BachmuthMatrix& y);
RingElem matrix_det(const BachmuthMatrix& x);

/// [[1 + r1(1-a2), r2(1-a2)], [r1(a1-1), 1 + r2(a1-1)]].
BachmuthMatrix ia_matrix(const IAEndo& e);
/// 1 + r1(1 - a2) + r2(a1 - 1).
RingElem ia_det(const IAEndo& e);
/// Parameter of e o f (f applied first): r + det(e) r'.
IAEndo ia_compose(const IAEndo& e, const IAEndo& f);
/// Applies the Bachmuth matrix to the T-part; throws std::invalid_argument
/// when z is not in W.
MagnusElem ia_apply(const MagnusModel& model, const IAEndo& e, const MagnusElem& z);

enum class IAVerdict { Inner, AutomorphismOnly, NotAutomorphism };
std::string to_string(IAVerdict v);

struct IAClassification {
  IAVerdict verdict;
  std::optional<Exp2> inner_exponent;  // set for Inner: det = a1^i a2^j
  RingElem det;
};

/// Inner when det is a monomial, AutomorphismOnly when det is another unit,
/// NotAutomorphism otherwise.
IAClassification ia_classify(const IAEndo& e);

// ---------------------------------------------------------------------------
// General endomorphisms, given by the images of x1 and x2.

struct Endo {
  MagnusElem y1;
  MagnusElem y2;
};

Endo endo_identity(const RingCtx& ctx);
Endo ia_as_endo(const IAEndo& e);
/// gamma_E : (x1, x2) -> (x2, x1^{-1}).
Endo endo_swap(const RingCtx& ctx);
/// gamma_T : (x1, x2) -> (x2 x1, x2).
Endo endo_transvection(const RingCtx& ctx);
/// gamma_u : (x1, x2) -> (x1, x2^u).
Endo endo_diagonal(const RingCtx& ctx, Int u);

/// Action of the abelianization of gamma on A, and the induced ring
/// endomorphism of R.
Exp2 ab_action(const Endo& g, Exp2 v);
RingElem ab_action(const Endo& g, const RingElem& alpha);

/// gamma(z) for z in W.
MagnusElem endo_apply(const MagnusModel& model, const Endo& g, const MagnusElem& z);
/// g o h (h applied first).
Endo endo_compose(const MagnusModel& model, const Endo& g, const Endo& h);

/// alpha with [gamma(x1), gamma(x2)] = [x1,x2]^alpha, normalized modulo
/// Ann(kappa). Throws InvariantViolation when the commutator of the images
/// is not in R*kappa.
RingElem gen_det(const MagnusModel& model, const Endo& g);

// ---------------------------------------------------------------------------
// Brute-force oracles over an explicit enumeration of W.

/// Whether e is bijective on W. An IA map fixes W/(W cap T), so its kernel
/// lies in W cap T; `relations` must list all of W cap T.
bool ia_bijective_brute(const MagnusModel& model, const IAEndo& e, const std::vector<MagnusElem>& relations);

/// |gamma_r(W)|, computed from the image generators alone. gamma_r is
/// bijective on W exactly when this equals |W|.
std::uint64_t ia_image_order(const IAEndo& e);

/// Table of all inner automorphisms of W, each recorded by its images of
/// (x1, x2). Built by running over every conjugator.
class InnerCensus {
 public:
  InnerCensus(const RingCtx& ctx, const std::vector<MagnusElem>& elements);
  /// Runs over all of W as (W cap T) x sections, holding only W cap T.
  explicit InnerCensus(const MagnusModel& model, std::size_t budget = 2'000'000);
  bool is_inner(const Endo& g) const;
  std::size_t size() const { return keys_.size(); }

 private:
  std::vector<std::string> keys_;  // sorted
};

/// Exact bit-packed encoding of a Magnus element, used as a lookup key.
std::string magnus_key(const MagnusElem& z);

}  // namespace metab
