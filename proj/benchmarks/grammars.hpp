#ifndef UGLR_BENCH_GRAMMARS_HPP
#define UGLR_BENCH_GRAMMARS_HPP

// Inline copies of the benchmark grammars so the binaries run from any
// directory.

namespace bench {

// Atomic-category grammar with PP-attachment ambiguity; parse counts
// grow like the Catalan numbers in the number of trailing PPs.
inline constexpr const char* kToy = R"(
category s. category np. category vp. category pp.
category det. category n. category pron. category v. category prep.
top s.
rule r1: s => [np, vp].
rule r2: np => [det, n].
rule r3: np => [pron].
rule r4: np => [np, pp].
rule r5: vp => [v].
rule r6: vp => [v, np].
rule r7: vp => [v, np, np].
rule r8: vp => [vp, pp].
rule r9: pp => [prep, np].
lex "det": det. lex "n": n. lex "pron": pron. lex "v": v. lex "prep": prep.
)";

// The same backbone with agreement and subcategorization features, so
// every shift and reduce pays for unification against generalized
// symbols.
inline constexpr const char* kFeatured = R"(
category s.
category np features [agr].
category vp features [agr].
category pp.
category det.
category n features [agr].
category pron features [agr].
category v features [agr,sub].
category prep.
top s.
rule r1: s => [np:[agr=A], vp:[agr=A]].
rule r2: np:[agr=A] => [det, n:[agr=A]].
rule r3: np:[agr=A] => [pron:[agr=A]].
rule r4: np:[agr=A] => [np:[agr=A], pp].
rule r5: vp:[agr=A] => [v:[agr=A,sub=intran]].
rule r6: vp:[agr=A] => [v:[agr=A,sub=tran], np:[agr=B]].
rule r7: vp:[agr=A] => [v:[agr=A,sub=ditran], np:[agr=B], np:[agr=C]].
rule r8: vp:[agr=A] => [vp:[agr=A], pp].
rule r9: pp => [prep, np:[agr=A]].
lex "he": pron:[agr=sg3].
lex "they": pron:[agr=pl3].
lex "the": det.
lex "dog": n:[agr=sg3].
lex "dogs": n:[agr=pl3].
lex "sleeps": v:[agr=sg3,sub=intran].
lex "sees": v:[agr=sg3,sub=tran].
lex "gives": v:[agr=sg3,sub=ditran].
lex "sleep": v:[agr=pl3,sub=intran].
lex "see": v:[agr=pl3,sub=tran].
lex "give": v:[agr=pl3,sub=ditran].
lex "near": prep.
)";

// Left movement with one filler: an empty np production licensed by a
// gap list entry.
inline constexpr const char* kMovement = R"(
category q. category s. category wh features [val]. category aux.
category np features [val]. category vp. category v. category pn features [val].
top q.
rule q1: q => [wh:[val=W], s] adds maxproj np:[val=W].
rule s1: s => [aux, np, vp].
rule vp1: vp => [v, np].
rule np1: np:[val=V] => [pn:[val=V]].
rule np2: np => [] consumes maxproj.
lex "what": wh:[val=thing].
lex "does": aux.
lex "john": pn:[val=john].
lex "seek": v.
)";

}  // namespace bench

#endif
