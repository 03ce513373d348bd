"""TLV field layout and checksum behaviour."""

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from snaas.codec import (
    OversizeValue,
    TlvField,
    Truncated,
    compute_checksum,
    decode_tlv,
    encode_tlv,
)


def octet_sum_checksum(data: bytes) -> int:
    # Independent oracle: literal octet summation, no shortcuts.
    total = 0
    for octet in data:
        total = (total + octet) % 0x10000
    return 0xFFFF - total


class TestEncodeTlv:
    def test_layout(self):
        assert encode_tlv(TlvField(0x0A, b"\x01\x02")) == bytes([0x0A, 0x02, 0x01, 0x02])

    def test_empty_value(self):
        assert encode_tlv(TlvField(0x0B, b"")) == bytes([0x0B, 0x00])

    def test_oversize_value_rejected(self):
        with pytest.raises(OversizeValue):
            TlvField(0x0C, bytes(256))

    def test_max_value_accepted(self):
        encoded = encode_tlv(TlvField(0x0C, bytes(255)))
        assert len(encoded) == 257


class TestDecodeTlv:
    def test_inverse_of_encode(self):
        field, offset = decode_tlv(bytes([0x0A, 0x02, 0x01, 0x02]), 0)
        assert field == TlvField(0x0A, b"\x01\x02")
        assert offset == 4

    def test_truncated_value(self):
        with pytest.raises(Truncated):
            decode_tlv(bytes([0x0A, 0x05, 0x01]), 0)

    def test_truncated_header(self):
        with pytest.raises(Truncated):
            decode_tlv(bytes([0x0A]), 0)

    def test_offset_advances_through_sequence(self):
        data = encode_tlv(TlvField(1, b"x")) + encode_tlv(TlvField(2, b"yz"))
        first, offset = decode_tlv(data, 0)
        second, end = decode_tlv(data, offset)
        assert (first.type_code, second.type_code) == (1, 2)
        assert end == len(data)

    def test_roundtrip_1000_random_fields(self):
        rng = random.Random(0x7EDC)
        for _ in range(1000):
            field = TlvField(rng.randint(0, 255), rng.randbytes(rng.randint(0, 255)))
            decoded, offset = decode_tlv(encode_tlv(field), 0)
            assert decoded == field
            assert offset == 2 + len(field.value)


class TestChecksum:
    def test_empty(self):
        assert compute_checksum(b"") == 0xFFFF

    def test_known_value(self):
        # sum(0x0A, 0x02, 0x01, 0x02) = 0x0F -> 0xFFFF - 0x0F
        data = bytes([0x0A, 0x02, 0x01, 0x02])
        assert octet_sum_checksum(data) == 0xFFF0
        assert compute_checksum(data) == 0xFFF0

    def test_increment_one_octet_decrements_checksum(self):
        rng = random.Random(1451)
        for _ in range(200):
            data = bytearray(rng.randbytes(rng.randint(1, 64)))
            i = rng.randrange(len(data))
            if data[i] == 0xFF:
                data[i] = 0  # keep the octet increment wrap-free
            before = compute_checksum(bytes(data))
            data[i] += 1
            assert compute_checksum(bytes(data)) == before - 1

    @given(st.binary(max_size=512))
    def test_matches_summation_oracle(self, data):
        assert compute_checksum(data) == octet_sum_checksum(data)

    @given(st.binary(max_size=128), st.integers(0, 127), st.integers(1, 255))
    def test_single_substitution_always_changes_checksum(self, data, index, delta):
        if not data:
            return
        index %= len(data)
        mutated = bytearray(data)
        mutated[index] = (mutated[index] + delta) % 256
        assert compute_checksum(bytes(mutated)) != compute_checksum(data)
