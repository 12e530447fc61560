#    opcat is a workbench for operadic categories and their Koszul resolutions
#
#    This file is part of opcat.
#
#        opcat is free software: you can redistribute it and/or modify
#        it under the terms of the GNU General Public License as published by
#        the Free Software Foundation, either version 3 of the License, or
#        (at your option) any later version.
#
#        opcat is distributed in the hope that it will be useful,
#        but WITHOUT ANY WARRANTY; without even the implied warranty of
#        MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the
#        GNU General Public License for more details.
#
#        You should have received a copy of the GNU General Public License
#        along with opcat. If not, see <http://www.gnu.org/licenses/>.

"""
    This module contains the statements instantiated by the verification suites
"""

statementsVersion = "1.0.0"
suites = [
    "dims",
    "pbw",
    "koszul",
    "morita",
    "tensor",
    "lie-case",
    "flie",
    "funcalc",
]
statementsDict = {
    "hom-dims": (
        "Hom dimensions of Cat AssU, Cat Com and Cat Lie",
        ["hom-space formula: Cat O(m, n) is a sum over maps m -> n of tensor products of O on the fibres"],
    ),
    "reduced-vanishing": (
        "Cat O(m, n) = 0 for m < n and a reduced operad O",
        ["vanishing of hom-spaces of reduced operads below the diagonal"],
    ),
    "category-laws": (
        "Associativity and units of composition in Cat AssU and Cat Lie",
        ["PROP associated with an operad", "Cat Lie is a subcategory of Cat AssU"],
    ),
    "symmetric-groups": (
        "Cat O(m, m) is the group algebra of S_m",
        ["endomorphisms of an object of a PROP of a reduced operad"],
    ),
    "pbw": (
        "Cat ComU (x)_S Cat Lie -> Cat AssU is an isomorphism",
        ["categorical Poincare-Birkhoff-Witt theorem"],
    ),
    "gr-relations": (
        "The action of free group homomorphisms on Cat AssU(d, -) is a contravariant functor",
        ["free group action on the unital associative PROP through the Hopf structure"],
    ),
    "right-lie": (
        "The free group action commutes with the right Cat Lie action",
        ["bimodule structure of Cat AssU over free groups and Cat Lie"],
    ),
    "koszul-complex": (
        "The Koszul complex of the Com/Lie pair squares to zero",
        ["Koszul complex of a quadratic operad"],
    ),
    "koszul-exact": (
        "The resolution of the d-th tensor power of the abelianization dual is exact",
        ["Koszulity of the Lie operad", "explicit minimal projective resolution of tensor powers of the abelianization dual"],
    ),
    "koszul-minimal": (
        "The differentials vanish on the top layers",
        ["minimal projective resolution of a Koszul operad"],
    ),
    "com-side": (
        "The surjection resolution of k[S_m] has homology k[S_m] at the top",
        ["projective resolution of the regular representation by surjection modules"],
    ),
    "ext-pattern": (
        "Ext between tensor powers of the abelianization dual is concentrated in degree d - n",
        ["Ext groups between tensor powers of the abelianization dual"],
    ),
    "morita-abelian": (
        "Induction of k[S_d] gives the d-th tensor power of the abelianization dual",
        ["Morita equivalence between Cat Lie-modules and analytic functors on free groups"],
    ),
    "morita-yoneda": (
        "Induction of P_n gives Cat AssU(n, -) and Hom(Cat AssU(n, -), F) gives the n-th cross-effect",
        ["Yoneda isomorphism for the twisting bimodule", "corepresentability of cross-effects"],
    ),
    "morita-gamma": (
        "The top cross-effect of an induced functor recovers the module",
        ["cross-effects of induced functors"],
    ),
    "well-defined": (
        "Every generating homomorphism preserves the relations of the induced functor",
        ["free group structure on the twisting bimodule"],
    ),
    "pbw-induction": (
        "Induced values have the dimension of Cat ComU (x)_S M",
        ["combinatorial description of induction through the PBW isomorphism"],
    ),
    "tensor": (
        "Induction takes the convolution product to the pointwise tensor product",
        ["symmetric monoidal compatibility of induction"],
    ),
    "lie-case": (
        "Induction of the module of a Lie algebra g gives the functor of the Hopf algebra Ug",
        ["analytic functor of the universal enveloping algebra", "classical PBW theorem"],
    ),
    "flie": (
        "P_2 = E + k_triv(2) with a non-split extension of k_sgn(2) by k(1)",
        ["non-split extension of Cat Lie-modules"],
    ),
    "poly-degree": (
        "Cat AssU(d, -) is polynomial of degree d with top cross-effect k[S_d]",
        ["polynomiality of the unital associative PROP"],
    ),
    "layer-ses": (
        "0 -> p_{d-1} F -> F -> ((a#)^(x)d (x) cr_d F)^{S_d} -> 0 holds on dimensions",
        ["short exact sequence of the top layer of a polynomial functor"],
    ),
    "pd-filtration": (
        "p_0 F <= p_1 F <= ... <= F and p_d is exact",
        ["polynomial filtration of functors on free groups"],
    ),
}
