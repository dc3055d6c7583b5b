"""Finite adhesive-category toolkit: C-sets, finite categories, (co)limits,
Van Kampen cubes, DPO rewriting and sheaf checks."""

from .adhesion import (AuditReport, Cube, LemmaReport, PropBasicReport, VKVerdict,
                       adhesivity_audit, lemma_basic_check, prop_basic_check, vk_cube_check)
from .categories import (boolean_lattice, chain, divisor_lattice, finset_category, m3, n5,
                         poset_category, terminal_category)
from .dpo import DPOResult, RejectReason, Rule, dpo_apply, enumerate_monos, pushout_complement
from .io import Document, FormatError, parse, serialize
from .kernel import (GRAPH, SET, Arrow, Budget, BudgetExceeded, CSet, CSetMorphism, FinCategory,
                     Morphism, Op, Schema, ValidationReport, compose, graph, identity, validate)
from .limits import (Cospan, Span, Square, SquareVerdict, is_mono, kernel_pair, pullback,
                     pushout, subobject_union, verify_square)
from .sheaf import (Cover, Presheaf, SheafVerdict, embedding_check, enumerate_presheaves,
                    generate_covers, representable, sheaf_check)

__version__ = "0.1.0"
