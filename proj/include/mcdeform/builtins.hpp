#pragma once

#include <string>
#include <vector>

#include "mcdeform/dgla.hpp"

namespace mcdeform {

/// Built-in DGLAs:
///   heis0       degree 0: p, q, z; [p,q] = z; d = 0
///   heis        degree 0: a, b, c; degree 1: x, y, w;
///               [a,b] = c, [a,x] = y, [b,y] = w, [c,x] = -w; d = 0
///   obstructed  degree 1: x; degree 2: y; [x,x] = 2y; d = 0
///   acyclic     degree 0: u; degree 1: v; du = v; abelian
///   abelian2    degree 0: c; degree 1: e1, e2, e3; degree 2: w, w2;
///               d(e3) = w; abelian
///   endw        graded endomorphisms of the acyclic complex w0 -> w1:
///               degree -1: f; degree 0: p, q; degree 1: e; d = [e, -]
///   zero        empty basis
std::vector<std::string> builtin_dgla_names();
DglaPtr builtin_dgla(const std::string& name);

struct BuiltinPair {
    std::string name;
    DglaMorphism h;
    DglaMorphism g;
};

/// Built-in pairs h : L -> M, g : N -> M:
///   id-obstructed   h = g = id on obstructed
///   obstructed-n0   h = id on obstructed, g : zero -> obstructed
///   acyclic-id      h = g = id on acyclic
///   heis-sub        h : span{b, c, y, w} -> heis inclusion, g = id on heis
///   endw-id         h = g = id on endw
///   target-zero     h : heis0 -> zero, g : acyclic -> zero
///   sources-zero    h, g : zero -> obstructed
std::vector<std::string> builtin_pair_names();
BuiltinPair builtin_pair(const std::string& name);

}  // namespace mcdeform
