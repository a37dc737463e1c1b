#include "hkbase/configuration.hpp"

#include <sstream>
#include <utility>

#include "hkbase/errors.hpp"

namespace hkbase {

std::string to_string(Primitivity p)
{
    switch (p) {
    case Primitivity::yes:
        return "yes";
    case Primitivity::no:
        return "no";
    case Primitivity::unknown:
        return "unknown";
    }
    return "unknown";
}

Configuration::Configuration(int n, GramLattice gram, std::vector<std::int64_t> multiplicities,
                             Primitivity m_primitive, bool a_ample, std::optional<RRPolynomial> rr,
                             std::vector<std::string> labels)
    : n_(n), gram_(std::move(gram)), mults_(std::move(multiplicities)), m_primitive_(m_primitive),
      a_ample_(a_ample), rr_(std::move(rr)), labels_(std::move(labels))
{
    if (n_ < 1) {
        throw InputError("half-dimension n must be positive");
    }
    if (mults_.empty()) {
        throw InputError("configuration has no fixed component");
    }
    if (gram_.rank() != mults_.size() + 1) {
        std::ostringstream msg;
        msg << "Gram rank " << gram_.rank() << " does not match 1 mobile class + " << mults_.size()
            << " components";
        throw InputError(msg.str());
    }
    for (std::size_t j = 0; j < mults_.size(); ++j) {
        if (mults_[j] < 1) {
            throw InputError("multiplicity of component " + std::to_string(j + 1) + " must be positive");
        }
    }
    if (rr_ && rr_->n != n_) {
        throw InputError("Riemann-Roch polynomial has n = " + std::to_string(rr_->n) + " but configuration has n = "
                         + std::to_string(n_));
    }
    if (labels_.empty()) {
        labels_.emplace_back("M");
        for (std::size_t j = 0; j < mults_.size(); ++j) {
            labels_.push_back("B" + std::to_string(j + 1));
        }
    }
    if (labels_.size() != gram_.rank()) {
        throw InputError("label count does not match Gram rank");
    }
}

std::vector<std::int64_t> Configuration::mobile() const
{
    std::vector<std::int64_t> v(gram_.rank(), 0);
    v[0] = 1;
    return v;
}

std::vector<std::int64_t> Configuration::component(std::size_t j) const
{
    std::vector<std::int64_t> v(gram_.rank(), 0);
    v.at(j + 1) = 1;
    return v;
}

std::vector<std::int64_t> Configuration::ample() const
{
    return combination(1, mults_);
}

std::vector<std::int64_t> Configuration::fixed_part() const
{
    return combination(0, mults_);
}

std::vector<std::int64_t> Configuration::combination(std::int64_t mobile_coeff, const std::vector<std::int64_t>& sub) const
{
    if (sub.size() != mults_.size()) {
        throw InputError("sub-multiplicity vector has wrong length");
    }
    std::vector<std::int64_t> v;
    v.reserve(gram_.rank());
    v.push_back(mobile_coeff);
    v.insert(v.end(), sub.begin(), sub.end());
    return v;
}

Configuration Configuration::with_primitivity(Primitivity p) const
{
    Configuration copy = *this;
    copy.m_primitive_ = p;
    return copy;
}

Configuration Configuration::with_ample(bool ample) const
{
    Configuration copy = *this;
    copy.a_ample_ = ample;
    return copy;
}

bool bk_shadow_member(const Configuration& c, const std::vector<std::int64_t>& x)
{
    for (std::size_t j = 0; j < c.component_count(); ++j) {
        if (c.component_square(j) < 0 && c.pair(x, c.component(j)) < 0) {
            return false;
        }
    }
    return true;
}

bool bk_shadow_member(const Configuration& c, const DivisorClass& x)
{
    return bk_shadow_member(c, x.coords);
}

} // namespace hkbase
