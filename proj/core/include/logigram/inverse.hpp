#ifndef LOGIGRAM_INVERSE_HPP
#define LOGIGRAM_INVERSE_HPP

#include <optional>
#include <vector>

#include "logigram/lambda.hpp"

namespace logigram {

// Simultaneous subterm replacement: every subterm alpha-equal to from[i]
// becomes to[i] (no rewriting inside replacements).  Sizes must match.
TermPtr replace(const TermPtr& h, const std::vector<TermPtr>& from,
                const std::vector<TermPtr>& to);
TermPtr replace1(const TermPtr& h, const TermPtr& from, const TermPtr& to);

// inverse_l(h, g): first f with normalize(f@g) alpha-equal h, or nullopt.
// inverse_r(h, g): first f with normalize(g@f) alpha-equal h, or nullopt.
// Results are beta-normal and verified by re-application before returning.
std::optional<TermPtr> inverse_l(const TermPtr& h, const TermPtr& g);
std::optional<TermPtr> inverse_r(const TermPtr& h, const TermPtr& g);

// All candidate solutions in fixed case order (a superset of the single
// operator result; used by lexical generation to explore alternatives).
std::vector<TermPtr> enumerate_inverse_l(const TermPtr& h, const TermPtr& g);
std::vector<TermPtr> enumerate_inverse_r(const TermPtr& h, const TermPtr& g);

} // namespace logigram

#endif
