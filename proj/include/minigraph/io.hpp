#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "minigraph/bounds.hpp"
#include "minigraph/radial.hpp"
#include "minigraph/surface.hpp"

namespace minigraph {

// u,theta,x,y,height,K,Nx,Ny,Nz; K and the normal come from the closed form
// when the immersion is profile-backed, else from grid stencils (nan at rows
// where no stencil fits).
void dump_surface_csv(const ConformalImmersion& imm, std::ostream& out);

// u,theta,K_numeric,K_decomp,K_closed,lambda,mu (nan where undefined).
void dump_curvature_csv(const ConformalImmersion& imm, std::ostream& out);

// s,p,dp_ds,hopf_c_check on n uniform-in-log samples.
void dump_profile_csv(const RadialProfile& profile, int n, std::ostream& out);

// Energy per sweep, one line each.
void dump_energy_trace_csv(const std::vector<double>& trace, std::ostream& out);

// JSON array of {name, lhs, rhs, margin, witness, params, hypothesis_ok}.
void dump_reports_json(const std::vector<BoundReport>& reports, std::ostream& out);

// ASCII OBJ mesh of the immersion; vertex curvature rides in '# K <value>'
// comment lines preceding each vertex.
void dump_surface_obj(const ConformalImmersion& imm, std::ostream& out);

}  // namespace minigraph
