"""Continuous-time quantum walks on star graphs via spectral distributions."""
from .decomposition import (InvarianceReport, JacobiSequences, k2_sequences, quantum_decompose,
                            star_c4_sequences, star_lattice_sequences, star_p3_sequences)
from .graphs import (RootedGraph, Stratification, apply_adjacency, build_cycle, build_k2,
                     build_path, build_star_lattice, closed_walk_counts, star_power,
                     star_product, stratify)
from .spectral import (SpectralMeasure, eval_poly, eval_shifted_poly, measure_for,
                       measure_moment, quadrature_measure, star_lattice_measure,
                       stieltjes_finite, stieltjes_invert, stieltjes_lattice_tail,
                       stieltjes_star_lattice)
from .walk import (AmplitudeSeries, ConvergenceReport, amplitudes_oracle, amplitudes_spectral,
                   convergence_study, per_vertex_probability, qclt_amplitudes, qclt_limit)

__version__ = "0.1.0"
