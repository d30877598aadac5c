// Copyright 2026 The ensq Authors
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

#include "ensq/circuit.hpp"
#include "ensq/compiler.hpp"
#include "ensq/dynamics.hpp"
#include "ensq/error.hpp"
#include "ensq/io.hpp"
#include "ensq/linalg.hpp"
#include "ensq/logical.hpp"
#include "ensq/native_gates.hpp"
