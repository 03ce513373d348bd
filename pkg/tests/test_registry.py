"""Directory store semantics, wire protocol, durability, and counters."""

import random
import signal
import socket
import subprocess
import sys
import threading
import time

import pytest

from snaas.codec import encode_teds
from snaas.registry import (
    DirectoryKey,
    DirectoryStore,
    InvalidBinary,
    NotFound,
    RegistryClient,
    RegistryServer,
    RegistryUnreachable,
)

from recordgen import rand_meta, rand_phy, rand_record

UUID_A = bytes(range(16))
UUID_B = bytes(range(16, 32))


@pytest.fixture
def store(tmp_path):
    s = DirectoryStore(str(tmp_path / "registry.log"))
    yield s
    s.close()


@pytest.fixture
def server(store):
    srv = RegistryServer(store, "127.0.0.1", 0)
    srv.start()
    yield srv
    srv.stop()


@pytest.fixture
def client(server):
    c = RegistryClient(*server.address)
    yield c
    c.close()


def meta_binary(seed=0):
    return encode_teds(rand_meta(random.Random(seed)))


class TestStore:
    def test_fresh_key_version_1(self, store):
        assert store.put(DirectoryKey(UUID_A, "01"), meta_binary()) == 1

    def test_overwrite_bumps_version_and_wins(self, store):
        key = DirectoryKey(UUID_A, "01")
        first, second = meta_binary(1), meta_binary(2)
        store.put(key, first)
        assert store.put(key, second) == 2
        assert store.get(key) == second

    def test_corrupt_binary_rejected_nothing_stored(self, store):
        raw = bytearray(meta_binary())
        raw[-1] ^= 0xFF
        with pytest.raises(InvalidBinary):
            store.put(DirectoryKey(UUID_A, "01"), bytes(raw))
        assert store.list(UUID_A) == []

    def test_get_returns_exact_octets(self, store):
        binary = meta_binary(3)
        store.put(DirectoryKey(UUID_A, "01"), binary)
        assert store.get(DirectoryKey(UUID_A, "01")) == binary

    def test_get_unknown_not_found(self, store):
        with pytest.raises(NotFound):
            store.get(DirectoryKey(UUID_A, "01"))

    def test_query_counter_counts_gets(self, store):
        key = DirectoryKey(UUID_A, "01")
        store.put(key, meta_binary())
        for _ in range(100):
            store.get(key)
        assert store.served_queries(UUID_A, "01") == 100
        assert store.served_queries(UUID_A) == 100

    def test_list_returns_stored_keys(self, store):
        for class_key in ("01", "03:00", "0C", "0D"):
            store.put(DirectoryKey(UUID_A, class_key), meta_binary())
        store.put(DirectoryKey(UUID_B, "01"), meta_binary())
        assert store.list(UUID_A) == ["01", "03:00", "0C", "0D"]
        assert store.list(bytes(16)) == []

    def test_delete_removes_key(self, store):
        for class_key in ("01", "0D"):
            store.put(DirectoryKey(UUID_A, class_key), meta_binary())
        store.delete(DirectoryKey(UUID_A, "0D"))
        assert store.list(UUID_A) == ["01"]
        with pytest.raises(NotFound):
            store.get(DirectoryKey(UUID_A, "0D"))
        with pytest.raises(NotFound):
            store.delete(DirectoryKey(UUID_A, "0D"))

    def test_version_restarts_after_delete(self, store):
        key = DirectoryKey(UUID_A, "01")
        store.put(key, meta_binary(1))
        store.put(key, meta_binary(2))
        store.delete(key)
        assert store.put(key, meta_binary(3)) == 1

    def test_bad_class_key_rejected(self):
        with pytest.raises(ValueError):
            DirectoryKey(UUID_A, "xx")
        with pytest.raises(ValueError):
            DirectoryKey(UUID_A, "03:")
        DirectoryKey(UUID_A, "03:255")  # fine

    def test_concurrent_counters_exact(self, store):
        key = DirectoryKey(UUID_A, "01")
        store.put(key, meta_binary())
        per_thread, threads = 50, 8

        def hammer():
            for _ in range(per_thread):
                store.get(key)

        workers = [threading.Thread(target=hammer) for _ in range(threads)]
        for w in workers:
            w.start()
        for w in workers:
            w.join()
        assert store.served_queries(UUID_A, "01") == per_thread * threads


class TestPersistence:
    def test_reopen_replays_entries(self, tmp_path):
        path = str(tmp_path / "reg.log")
        binary = meta_binary(7)
        store = DirectoryStore(path)
        store.put(DirectoryKey(UUID_A, "01"), binary)
        store.put(DirectoryKey(UUID_A, "0D"), meta_binary(8))
        store.delete(DirectoryKey(UUID_A, "0D"))
        store.close()

        reopened = DirectoryStore(path)
        assert reopened.get(DirectoryKey(UUID_A, "01")) == binary
        assert reopened.list(UUID_A) == ["01"]
        reopened.close()

    def test_reopen_preserves_versions(self, tmp_path):
        path = str(tmp_path / "reg.log")
        store = DirectoryStore(path)
        store.put(DirectoryKey(UUID_A, "01"), meta_binary(1))
        store.put(DirectoryKey(UUID_A, "01"), meta_binary(2))
        store.close()
        reopened = DirectoryStore(path)
        assert reopened.put(DirectoryKey(UUID_A, "01"), meta_binary(3)) == 3
        reopened.close()

    def test_torn_tail_discarded(self, tmp_path):
        path = str(tmp_path / "reg.log")
        store = DirectoryStore(path)
        store.put(DirectoryKey(UUID_A, "01"), meta_binary(1))
        store.close()
        with open(path, "ab") as fh:
            fh.write(b"PUT " + UUID_B.hex().encode() + b" 01 500\nonly-a-few-octets")
        reopened = DirectoryStore(path)
        assert reopened.list(UUID_A) == ["01"]
        assert reopened.list(UUID_B) == []
        reopened.close()

    def test_compaction_keeps_live_state(self, tmp_path):
        path = str(tmp_path / "reg.log")
        store = DirectoryStore(path)
        key = DirectoryKey(UUID_A, "01")
        for i in range(200):
            store.put(key, meta_binary(i))
        store.close()
        size_before = (tmp_path / "reg.log").stat().st_size
        reopened = DirectoryStore(path)  # triggers compaction
        assert reopened.get(key) == meta_binary(199)
        reopened.close()
        assert (tmp_path / "reg.log").stat().st_size < size_before


class TestWireProtocol:
    def test_put_get_roundtrip(self, client):
        binary = encode_teds(rand_phy(random.Random(9)))
        assert client.put(UUID_A, "0D", binary) == 1
        assert client.get(UUID_A, "0D") == binary

    def test_get_unknown_notfound(self, client):
        with pytest.raises(NotFound):
            client.get(UUID_A, "01")

    def test_list_and_delete(self, client):
        for class_key in ("01", "03:00"):
            client.put(UUID_A, class_key, meta_binary())
        assert client.list(UUID_A) == ["01", "03:00"]
        client.delete(UUID_A, "03:00")
        assert client.list(UUID_A) == ["01"]
        with pytest.raises(NotFound):
            client.delete(UUID_A, "03:00")

    def test_stats_aggregate_and_per_key(self, client):
        client.put(UUID_A, "01", meta_binary(1))
        client.put(UUID_A, "0D", meta_binary(2))
        client.get(UUID_A, "01")
        client.get(UUID_A, "01")
        client.get(UUID_A, "0D")
        assert client.stats(UUID_A, "01") == 2
        assert client.stats(UUID_A, "0D") == 1
        assert client.stats(UUID_A) == 3

    def test_invalid_binary_rejected_over_wire(self, client):
        from snaas.registry import StoreRejected

        with pytest.raises(StoreRejected):
            client.put(UUID_A, "01", b"garbage")
        assert client.list(UUID_A) == []

    def test_bad_request_line(self, server):
        with socket.create_connection(server.address, timeout=5) as sock:
            sock.sendall(b"FROB 00\n")
            reply = sock.recv(256)
        assert reply.startswith(b"ERR BADREQUEST")

    def test_unreachable_endpoint(self):
        client = RegistryClient("127.0.0.1", 1)  # nothing listens on port 1
        with pytest.raises(RegistryUnreachable):
            client.get(UUID_A, "01")

    def test_many_sequential_gets_count(self, client):
        client.put(UUID_A, "01", meta_binary())
        for _ in range(100):
            client.get(UUID_A, "01")
        assert client.stats(UUID_A, "01") == 100

    def test_concurrent_clients(self, server):
        setup = RegistryClient(*server.address)
        setup.put(UUID_A, "01", meta_binary())
        setup.close()
        per_client, n_clients = 25, 6
        errors = []

        def hammer():
            try:
                c = RegistryClient(*server.address)
                for _ in range(per_client):
                    c.get(UUID_A, "01")
                c.close()
            except Exception as exc:  # noqa: BLE001 - collected for the assert
                errors.append(exc)

        workers = [threading.Thread(target=hammer) for _ in range(n_clients)]
        for w in workers:
            w.start()
        for w in workers:
            w.join()
        assert not errors
        check = RegistryClient(*server.address)
        assert check.stats(UUID_A, "01") == per_client * n_clients
        check.close()


class TestKillDurability:
    def test_acknowledged_put_survives_sigkill(self, tmp_path):
        log_path = str(tmp_path / "reg.log")
        binary = encode_teds(rand_record(random.Random(11)))

        proc = subprocess.Popen(
            [sys.executable, "-m", "snaas.registry.cli", "serve",
             "--listen", "127.0.0.1:0", "--data", log_path],
            stdout=subprocess.PIPE, stderr=subprocess.DEVNULL, text=True,
        )
        try:
            banner = proc.stdout.readline()
            address = banner.strip().rsplit(" ", 1)[-1]
            host, port = address.rsplit(":", 1)
            client = RegistryClient(host, int(port))
            assert client.put(UUID_A, "01", binary) == 1
            client.close()
        finally:
            proc.send_signal(signal.SIGKILL)
            proc.wait(timeout=10)

        store = DirectoryStore(log_path)
        try:
            assert store.get(DirectoryKey(UUID_A, "01")) == binary
        finally:
            store.close()

    def test_inject_delay_slows_get(self, tmp_path):
        store = DirectoryStore(str(tmp_path / "reg.log"))
        server = RegistryServer(store, "127.0.0.1", 0, inject_delay_us=50_000)
        server.start()
        try:
            client = RegistryClient(*server.address)
            client.put(UUID_A, "01", meta_binary())
            t0 = time.monotonic()
            client.get(UUID_A, "01")
            elapsed = time.monotonic() - t0
            client.close()
            assert elapsed >= 0.05
        finally:
            server.stop()
            store.close()
