class PrintableMixin:
    def as_printable(self):
        return self


class ComparableMixin:
    def as_comparable(self):
        return self


class HashableMixin:
    def as_hashable(self):
        return self


class StorableMixin:
    def as_storable(self):
        return self


class LoggableMixin:
    def as_loggable(self):
        return self


class CacheableMixin:
    def as_cacheable(self):
        return self


class Omnitool(PrintableMixin, ComparableMixin, HashableMixin, StorableMixin, LoggableMixin, CacheableMixin):
    def __init__(self, label):
        self.label = label
        self._uses = 0

    def describe(self):
        self._uses += 1
        return self.label
