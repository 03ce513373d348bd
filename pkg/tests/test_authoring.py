"""Templates, description XML roundtrip, TEDS generation, registration."""

import http.client
import random

import pytest

from snaas.authoring import (
    AuthoringService,
    ConstraintViolation,
    SchemaError,
    TimDescription,
    create_template,
    fetch_description,
    generate_teds,
    parse_description,
    register_device,
    render_description,
    template_to_xml,
)
from snaas.codec import (
    ChannelKind,
    InvalidRecord,
    PhyMedium,
    PhyTeds,
    TransducerChannelTeds,
    UnknownClass,
    UserTransducerNameTeds,
    decode_teds,
)
from snaas.registry import (
    DirectoryStore,
    RegistryClient,
    RegistryServer,
    RegistryUnreachable,
)

from recordgen import rand_description


def one_channel_desc(uuid=bytes(range(16))) -> TimDescription:
    return TimDescription(
        uuid=uuid,
        response_time_ms=1000,
        channels=(
            TransducerChannelTeds(
                channel_id=0,
                channel_kind=ChannelKind.SENSOR,
                unit_code=2,
                range_min=-40.0,
                range_max=125.0,
                sample_period_us=100_000,
                warmup_delay_us=0,
            ),
        ),
        name=UserTransducerNameTeds("Acme", "T-100", "lab-temp"),
        phy=PhyTeds(PhyMedium.SIM_STREAM, 64, 115_200),
    )


@pytest.fixture
def registry(tmp_path):
    store = DirectoryStore(str(tmp_path / "reg.log"))
    server = RegistryServer(store, "127.0.0.1", 0)
    server.start()
    yield server
    server.stop()
    store.close()


class TestTemplates:
    def test_meta_template_fields(self):
        template = create_template("meta")
        assert [d.name for d in template.descriptors] == [
            "uuid", "channel_count", "response_time_ms",
        ]

    def test_phy_template_fields(self):
        template = create_template("phy")
        assert [d.name for d in template.descriptors] == [
            "medium", "max_payload_octets", "data_rate_bps",
        ]

    def test_unknown_class_code(self):
        with pytest.raises(UnknownClass):
            create_template(0x05)
        with pytest.raises(UnknownClass):
            create_template("frob")

    def test_template_xml_lists_constraints(self):
        xml = template_to_xml(create_template("channel"))
        assert 'name="channel_kind"' in xml
        assert 'allowed="sensor,actuator"' in xml


class TestDescriptionXml:
    def test_render_one_channel(self):
        xml = render_description(one_channel_desc())
        assert xml.count("<channel ") == 1
        assert 'uuid="000102030405060708090a0b0c0d0e0f"' in xml

    def test_zero_channels_flagged_on_render(self):
        desc = one_channel_desc()
        object.__setattr__(desc, "channels", ())
        with pytest.raises(ConstraintViolation) as exc:
            render_description(desc)
        assert exc.value.field == "channel_count"

    def test_parse_inverts_render(self):
        desc = one_channel_desc()
        assert parse_description(render_description(desc)) == desc

    def test_roundtrip_200_random_descriptions(self):
        rng = random.Random(0xA11)
        for _ in range(200):
            desc = rand_description(rng)
            assert parse_description(render_description(desc)) == desc

    def test_missing_uuid_schema_error(self):
        xml = render_description(one_channel_desc()).replace(
            ' uuid="000102030405060708090a0b0c0d0e0f"', "", 1
        )
        with pytest.raises(SchemaError) as exc:
            parse_description(xml)
        assert exc.value.path == "/tim/uuid"

    def test_missing_meta_schema_error(self):
        desc = one_channel_desc()
        xml = "\n".join(
            line for line in render_description(desc).splitlines() if "<meta" not in line
        )
        with pytest.raises(SchemaError) as exc:
            parse_description(xml)
        assert exc.value.path == "/tim/meta"

    def test_duplicate_channel_id(self):
        xml = render_description(one_channel_desc())
        duplicate = xml.replace("<name", xml[xml.index("<channel"):xml.index("<name")] + "<name", 1)
        with pytest.raises(ConstraintViolation) as exc:
            parse_description(duplicate)
        assert exc.value.field == "channel_id"

    def test_count_mismatch(self):
        xml = render_description(one_channel_desc()).replace('channel_count="1"', 'channel_count="2"')
        with pytest.raises(ConstraintViolation) as exc:
            parse_description(xml)
        assert exc.value.field == "channel_count"

    def test_bad_range_flagged(self):
        xml = render_description(one_channel_desc()).replace('range_max="125.0"', 'range_max="-40.0"')
        with pytest.raises(ConstraintViolation):
            parse_description(xml)

    def test_not_xml(self):
        with pytest.raises(SchemaError):
            parse_description("this is not xml")


class TestGenerateTeds:
    def test_one_channel_yields_four_binaries(self):
        binaries = generate_teds(one_channel_desc())
        assert list(binaries) == ["01", "03:00", "0C", "0D"]

    def test_three_channels_yield_six(self):
        desc = rand_description(random.Random(5), channel_count=3)
        assert len(generate_teds(desc)) == 6

    def test_binaries_decode_back_to_description(self):
        desc = one_channel_desc()
        binaries = generate_teds(desc)
        assert decode_teds(binaries["01"]) == desc.meta
        assert decode_teds(binaries["03:00"]) == desc.channels[0]
        assert decode_teds(binaries["0C"]) == desc.name
        assert decode_teds(binaries["0D"]) == desc.phy

    def test_generated_count_invariant(self):
        rng = random.Random(6)
        for _ in range(20):
            desc = rand_description(rng)
            assert len(generate_teds(desc)) == 3 + len(desc.channels)

    def test_invalid_description_rejected(self):
        desc = one_channel_desc()
        object.__setattr__(desc, "channels", ())
        with pytest.raises(InvalidRecord):
            generate_teds(desc)


class TestRegistration:
    def test_receipt_lists_four_keys(self, registry):
        receipt = register_device(one_channel_desc(), registry.address)
        assert receipt.keys == ["01", "03:00", "0C", "0D"]
        assert all(v == 1 for v in receipt.stored.values())

    def test_reregistration_bumps_versions(self, registry):
        desc = one_channel_desc()
        register_device(desc, registry.address)
        receipt = register_device(desc, registry.address)
        assert all(v == 2 for v in receipt.stored.values())
        assert receipt.keys == ["01", "03:00", "0C", "0D"]

    def test_directory_returns_identical_octets(self, registry):
        desc = rand_description(random.Random(8), channel_count=2)
        binaries = generate_teds(desc)
        register_device(desc, registry.address)
        client = RegistryClient(*registry.address)
        try:
            for class_key, binary in binaries.items():
                assert client.get(desc.uuid, class_key) == binary
        finally:
            client.close()

    def test_registry_down(self):
        with pytest.raises(RegistryUnreachable):
            register_device(one_channel_desc(), ("127.0.0.1", 1))

    def test_fetch_description_roundtrip(self, registry):
        desc = rand_description(random.Random(9), channel_count=3)
        register_device(desc, registry.address)
        client = RegistryClient(*registry.address)
        try:
            assert fetch_description(client, desc.uuid) == desc
        finally:
            client.close()


class TestHttpService:
    @pytest.fixture
    def service(self, registry):
        svc = AuthoringService(registry.address)
        svc.start()
        yield svc
        svc.stop()

    def _request(self, service, method, path, body=None):
        conn = http.client.HTTPConnection(*service.address, timeout=5)
        conn.request(method, path, body=body)
        response = conn.getresponse()
        payload = response.read().decode("utf-8")
        conn.close()
        return response.status, payload

    def test_get_template(self, service):
        status, body = self._request(service, "GET", "/templates/meta")
        assert status == 200
        assert 'name="channel_count"' in body

    def test_get_template_unknown_class(self, service):
        status, _ = self._request(service, "GET", "/templates/calibration")
        assert status == 404

    def test_post_device_then_get_description(self, service):
        desc = one_channel_desc()
        status, receipt = self._request(
            service, "POST", "/devices", render_description(desc)
        )
        assert status == 200
        assert 'key="03:00"' in receipt
        status, body = self._request(service, "GET", f"/devices/{desc.uuid.hex()}")
        assert status == 200
        assert parse_description(body) == desc

    def test_post_invalid_document(self, service):
        status, body = self._request(service, "POST", "/devices", "<tim></tim>")
        assert status == 400
        assert "/tim/uuid" in body

    def test_get_unknown_device(self, service):
        status, _ = self._request(service, "GET", f"/devices/{'ff' * 16}")
        assert status == 404
