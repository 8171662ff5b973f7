#include "emsens/equivalent_sources.hpp"

namespace emsens {

EquivalentSourceSampler::EquivalentSourceSampler(std::vector<const CoeffDerivatives*> params,
                                                 int nsteps)
    : params_(std::move(params)) {
    records_.reserve(params_.size());
    for (const CoeffDerivatives* cd : params_) {
        EquivalentSourceRecord rec;
        rec.param = cd->param;
        rec.j.resize(cd->e_dofs.size());
        rec.j_raw.resize(cd->e_dofs.size());
        for (std::size_t d = 0; d < cd->e_dofs.size(); ++d) {
            rec.j[d].reserve(static_cast<std::size_t>(nsteps));
            rec.j_raw[d].resize(cd->e_dofs[d].terms.size());
            for (auto& series : rec.j_raw[d]) series.reserve(static_cast<std::size_t>(nsteps));
        }
        rec.k.resize(cd->h_dofs.size());
        rec.k_raw.resize(cd->h_dofs.size());
        for (std::size_t d = 0; d < cd->h_dofs.size(); ++d) {
            rec.k[d].reserve(static_cast<std::size_t>(nsteps));
            rec.k_raw[d].resize(cd->h_dofs[d].terms.size());
            for (auto& series : rec.k_raw[d]) series.reserve(static_cast<std::size_t>(nsteps));
        }
        records_.push_back(std::move(rec));
    }
}

namespace {
void sample_dofs(const std::vector<AffectedDof>& dofs, const Fields<double>& f,
                 std::vector<std::vector<double>>& out,
                 std::vector<std::vector<std::vector<double>>>& raw) {
    for (std::size_t d = 0; d < dofs.size(); ++d) {
        const AffectedDof& dof = dofs[d];
        double total = 0.0;
        for (std::size_t t = 0; t < dof.terms.size(); ++t) {
            const StencilTerm& term = dof.terms[t];
            const std::vector<double>& arr = field_array(f, term.diff_field);
            const double diff = term.sign * (arr[static_cast<std::size_t>(term.p_plus)] -
                                             arr[static_cast<std::size_t>(term.p_minus)]);
            raw[d][t].push_back(diff);
            total += dof.coeffs[t].derivative(1) * diff;
        }
        out[d].push_back(total);
    }
}
}  // namespace

void EquivalentSourceSampler::sample_k(int n, const Fields<double>& f) {
    (void)n;
    for (std::size_t p = 0; p < params_.size(); ++p)
        sample_dofs(params_[p]->h_dofs, f, records_[p].k, records_[p].k_raw);
}

void EquivalentSourceSampler::sample_j(int n, const Fields<double>& f) {
    (void)n;
    for (std::size_t p = 0; p < params_.size(); ++p)
        sample_dofs(params_[p]->e_dofs, f, records_[p].j, records_[p].j_raw);
}

StepHooks EquivalentSourceSampler::hooks() {
    StepHooks h;
    h.before_h = [this](int n, const Fields<double>& f) { sample_k(n, f); };
    h.after_h = [this](int n, const Fields<double>& f) { sample_j(n, f); };
    return h;
}

}  // namespace emsens
