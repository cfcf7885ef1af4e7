#pragma once
//------------------------------------------------------------------------------
//
//   Copyright 2026 The gibbsmax Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#include "gibbsmax/bounds.hpp"
#include "gibbsmax/ensemble.hpp"
#include "gibbsmax/error.hpp"
#include "gibbsmax/experiment.hpp"
#include "gibbsmax/gibbs.hpp"
#include "gibbsmax/io.hpp"
#include "gibbsmax/parallel.hpp"
#include "gibbsmax/quadrature.hpp"
#include "gibbsmax/quench.hpp"
#include "gibbsmax/rem.hpp"
#include "gibbsmax/rng.hpp"
#include "gibbsmax/svg.hpp"
