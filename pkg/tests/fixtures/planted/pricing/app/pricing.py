from .billing import RouteB
from .logistics import TicketB


class Pricing:
    def __init__(self, base, rate, floor, cap):
        self.base = base
        self.rate = rate
        self.floor = floor
        self.cap = cap

    def price(self, invoice: RouteB, carrier: TicketB):
        gross = invoice.ref0 + invoice.ref1 + invoice.ref2
        fees = carrier.ref0 + carrier.ref1
        raw = (gross + fees) * self.rate + self.base
        return min(max(raw, self.floor), self.cap)

    def describe(self):
        text = str(self.base)
        return text
