// Copyright 2026 The casmat Authors
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

#pragma once

#include "casmat/bma.hpp"
#include "casmat/catalog.hpp"
#include "casmat/correspondence.hpp"
#include "casmat/error.hpp"
#include "casmat/hypergroup.hpp"
#include "casmat/io.hpp"
#include "casmat/kernel.hpp"
#include "casmat/measure.hpp"
#include "casmat/parallel.hpp"
#include "casmat/scheme.hpp"
