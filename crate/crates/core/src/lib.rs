// Copyright (C) 2026 - The zx-core developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! ZX-diagrams as open multigraphs, with a sound rewrite engine, a dense
//! tensor oracle, and builders for standard protocols.

pub mod circuit;
pub mod cli;
pub mod diagram;
pub mod dot;
pub mod doubled;
pub mod format;
pub mod phase;
pub mod protocols;
pub mod random;
pub mod rewrite;
pub mod simplify;
pub mod tensor;

pub use diagram::{Color, Diagram, DiagramError, EdgeId, VertexId, VertexKind};
pub use phase::Phase;
pub use tensor::{compare, compare_diagrams, evaluate, CompareMode, Tensor, Verdict};
