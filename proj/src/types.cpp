#include "gksvm/types.hpp"

namespace gksvm {

Dataset Dataset::slice(std::size_t first, std::size_t count) const {
    if (first + count > size()) throw InputError("dataset slice out of range");
    Dataset out;
    const auto f = static_cast<Eigen::Index>(first);
    const auto c = static_cast<Eigen::Index>(count);
    out.x = x.middleRows(f, c);
    if (y.size() > 0) out.y = y.segment(f, c);
    return out;
}

void require_finite(const PointMatrix& x, const char* what) {
    if (!x.allFinite()) throw InputError(std::string("non-finite values in ") + what);
}

void require_finite(const Vector& v, const char* what) {
    if (!v.allFinite()) throw InputError(std::string("non-finite values in ") + what);
}

}  // namespace gksvm
