"""Domain models for quantum double D(G) models."""
from .group import ConjugacyClass, FiniteGroup, Subgroup
from .characters import CharacterTable, ClassFunction, ExplicitIrrep
from .anyon import AnyonLabel, AnyonType, FluxPairState
from .lattice import Site, TorusLattice
from .operator import HilbertSpace, Sign, SparseOperator
from .couplings import CouplingConfig
from .hamiltonian import HamiltonianKind, HamiltonianSpec, KitaevForm, SpectrumLevel, SpectrumMode, SpectrumReport
from .sector import EnergySector, SectorAnyon, SplittingDiagram
from .verification import CheckResult, VerificationReport
