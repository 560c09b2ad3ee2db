// Copyright 2026 The Onsager Algebra Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ONSAGER_ONSAGER_HPP
#define ONSAGER_ONSAGER_HPP

#include "onsager/clock_string.hpp"
#include "onsager/config.hpp"
#include "onsager/dense.hpp"
#include "onsager/errors.hpp"
#include "onsager/integrability.hpp"
#include "onsager/intertwiner.hpp"
#include "onsager/model.hpp"
#include "onsager/operator_sum.hpp"
#include "onsager/report.hpp"
#include "onsager/spectral.hpp"
#include "onsager/verifier.hpp"

#endif  // ONSAGER_ONSAGER_HPP
