"""Quasi-dyadic alternant keys over GF(q^2) and the conductor key-recovery attack."""

from .galois import FieldElement, FieldSpec, make_field
from .codes import LinearCode
from .qd_alternant import QdPublicKey, QdSecretKey, qd_keygen
from .attack import AttackConfig, RecoveredKey, run_attack, verify_key

__all__ = [
    "AttackConfig",
    "FieldElement",
    "FieldSpec",
    "LinearCode",
    "QdPublicKey",
    "QdSecretKey",
    "RecoveredKey",
    "make_field",
    "qd_keygen",
    "run_attack",
    "verify_key",
]
