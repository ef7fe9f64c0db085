"""quditpulse: engineer effective interactions in qudit ensembles with global pulses.

Workflow: represent a two-qudit interaction as a C matrix (`cmatrix`),
enumerate composite pulses and their orthogonal representations
(`pulses`), synthesize decoupling / engineering sequences by linear
programming (`synthesis`), and verify them with exact Floquet
simulation (`floquet`).
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .basis import (ExchangeStructure, OperatorBasis, build_basis,
                    build_exchange, spin1_generators)
from .cmatrix import (CMatrix, IsoAnisoSplit, SymmetricBasis, TwoQuditInteraction,
                      WVector, build_symmetric_basis, c_matrix,
                      exchange_trace_identity, from_w, is_cancellable,
                      secular_effective, split_iso_aniso, strip_single_body,
                      to_interaction, w_vector)
from .errors import (DocumentError, InvalidDimensionError, QuditPulseError,
                     RepresentationError, ResourceLimitError)
from .floquet import (BenchmarkResult, EnsembleSpec, FidelityTrace, FloquetUnitary,
                      benchmark_decoupling, build_hamiltonian, fidelity_trace,
                      floquet_unitary, free_fidelity, magnus0, magnus1,
                      random_couplings)
from .presets import hpq_target, preset, preset_names
from .pulses import (CompositePulse, CompositeSet, ElementaryPulse, OrthogonalRep,
                     PulseSequence, applied_to_frames, effective_c,
                     elementary_pulses, enumerate_composites, frames_to_applied,
                     identity_sequence, m_rep, orthogonal_rep,
                     spin1_elementary_pulses, dipolar_decoupling_sequence)
from .simplex import LinearProgram, SimplexResult, solve_lp
from .synthesis import (SynthesisResult, concatenate, decouple, engineer,
                        engineer_hpq, hpq_corner_sequences, map_anisotropic,
                        symmetrize)

__version__ = "0.1.0"
