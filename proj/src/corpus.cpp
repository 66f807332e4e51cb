#include "gaussdens/corpus.hpp"

namespace gaussdens {

const std::vector<CorpusEntry>& golden_corpus() {
    using F = Family;
    // Expected values are worked out by hand from 1/p per modulus, products,
    // inclusion-exclusion and the delimited formula 1/(1+alpha) - 1/(1+beta).
    static const std::vector<CorpusEntry> corpus = {
        {"full", "P2", "1", F::product_like},
        {"empty", "empty", "0", F::other},
        {"lattice-1-1", "lattice(1,1)", "1", F::product_like},
        {"lattice-2-3", "lattice(2,3)", "1/6", F::product_like},
        {"lattice-4-5", "lattice(4,5)", "1/20", F::product_like},
        {"lattice-7-11", "lattice(7,11)", "1/77", F::product_like},
        {"lcm-2-3", "inter(lattice(2,3),lattice(3,2))", "1/36", F::product_like},
        {"lcm-4-6", "inter(lattice(4,6),lattice(6,4))", "1/144", F::product_like},
        {"prod-even-all", "prod(mult(2),P)", "1/2", F::product_like},
        {"prod-finite-axis", "prod({3},P)", "0", F::product_like},
        {"prod-union-5", "prod(union(mult(2),mult(3)),mult(5))", "2/15", F::product_like},
        {"prod-coprime-3", "prod(compl(mult(3)),P)", "2/3", F::product_like},
        {"finite-pairs", "finite{(1,1),(2,5)}", "0", F::other},
        {"upper-5-5", "upper(5,5)", "1", F::product_like},
        {"translated-lattice", "translate(lattice(2,2),7,9)", "1/4", F::product_like},
        {"translated-product", "translate(prod(mult(2),mult(3)),4,4)", "1/6", F::product_like},
        {"dilated-full", "dilate(2,5,P2)", "1/10", F::product_like},
        {"dilated-lattice", "dilate(2,3,lattice(2,1))", "1/12", F::product_like},
        {"union-axes", "union(lattice(2,1),lattice(1,2))", "3/4", F::other},
        {"union-disjoint", "union(lattice(2,2),translate(lattice(2,2),1,1))", "1/2", F::other},
        {"complement-lattice", "compl(lattice(2,3))", "5/6", F::other},
        {"difference-full", "diff(P2,lattice(3,3))", "8/9", F::other},
        {"difference-nested", "diff(lattice(2,1),lattice(4,1))", "1/4", F::other},
        {"inter-complement", "inter(lattice(2,2),compl(lattice(4,4)))", "3/16", F::other},
        {"delim-half-2", "delim(pow(1,1/2),pow(1,2))", "1/3", F::delimited},
        {"delim-1-3", "delim(pow(1,1),pow(1,3))", "1/4", F::delimited},
        {"delim-0-2", "delim(const(1),pow(1,2))", "2/3", F::delimited},
        {"delim-exp", "delim(const(1),exp(1,2))", "1", F::delimited},
        {"delim-third-3", "delim(pow(1,1/3),pow(1,3))", "1/2", F::delimited},
        {"delim-translated", "translate(delim(pow(1,1),pow(1,3)),3,5)", "1/4", F::delimited},
        {"delim-heavy-tail", "inter(delim(pow(1,1/2),pow(1,2)),upper(5,5))", "1/3", F::delimited},
        {"delim-dilated", "dilate(2,1,delim(const(1),pow(1,2)))", "1/3", F::delimited},
        {"delim-complement", "compl(delim(pow(1,1),pow(1,3)))", "3/4", F::other},
        {"delim-exp-exp", "delim(exp(1,2),exp(1,3))", "0", F::delimited},
        {"delim-pow-exp", "delim(pow(2,1),exp(3,2))", "1/2", F::delimited},
    };
    return corpus;
}

}  // namespace gaussdens
