#include "cliffray/cliffor.hpp"

#include "cliffray/errors.hpp"

namespace cliffray {

Cliffor grade(const Cliffor& a, int g) {
    switch (g) {
        case 0: return Cliffor::scalar(a.s);
        case 1: return Cliffor::vector(a.v);
        case 2: return Cliffor::bivector(a.b);
        case 3: return Cliffor::pseudoscalar(a.p);
        default: throw GradeOutOfRange(g);
    }
}

}  // namespace cliffray
