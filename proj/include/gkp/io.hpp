#ifndef GKP_IO_HPP
#define GKP_IO_HPP

#include <string>

#include "gkp/comb.hpp"
#include "gkp/grid.hpp"

namespace gkp {

/// Header `coordinate,re,im,density`, one row per grid point, %.17g.
std::string grid_to_csv(const GridState& grid);

/// {"axis","origin","spacing","size","re":[...],"im":[...]}
std::string grid_to_json(const GridState& grid);
GridState grid_from_json(const std::string& text);

/// {"delta","axis","dual_shift","peaks":[{"mu","re","im"}]}
std::string comb_to_json(const GaussianComb& comb);
GaussianComb comb_from_json(const std::string& text);

}  // namespace gkp

#endif  // GKP_IO_HPP
