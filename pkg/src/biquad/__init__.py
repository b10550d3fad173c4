"""Indecomposable integers and universal quadratic forms over real biquadratic fields."""

from .core import (
    BiquadElement,
    BiquadField,
    Case,
    Order,
    Sign,
    SignCertificate,
    cmp_total,
    exact_sign,
    is_totally_positive,
    make_field,
)

__all__ = [
    "BiquadElement",
    "BiquadField",
    "Case",
    "Order",
    "Sign",
    "SignCertificate",
    "cmp_total",
    "exact_sign",
    "is_totally_positive",
    "make_field",
]
