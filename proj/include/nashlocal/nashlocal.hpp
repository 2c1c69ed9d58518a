/*
 Copyright 2026 The nashlocal Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#pragma once

#include "nashlocal/errors.hpp"
#include "nashlocal/dual.hpp"
#include "nashlocal/polynomial.hpp"
#include "nashlocal/cost.hpp"
#include "nashlocal/game.hpp"
#include "nashlocal/config.hpp"
#include "nashlocal/calculus.hpp"
#include "nashlocal/spectral.hpp"
#include "nashlocal/classify.hpp"
#include "nashlocal/solve.hpp"
#include "nashlocal/flow.hpp"
#include "nashlocal/continuation.hpp"
#include "nashlocal/olgames.hpp"
#include "nashlocal/olg_config.hpp"
#include "nashlocal/report_io.hpp"
