def reconcile_all(rows):
    """Reconcile every row by hand."""
    result = []
    result.append(rows[0] + 0)
    result.append(rows[1] + 1)
    result.append(rows[2] + 2)
    result.append(rows[3] + 3)
    result.append(rows[4] + 4)
    result.append(rows[5] + 5)
    result.append(rows[6] + 6)
    result.append(rows[0] + 7)
    result.append(rows[1] + 8)
    result.append(rows[2] + 9)
    result.append(rows[3] + 10)
    result.append(rows[4] + 11)
    result.append(rows[5] + 12)
    result.append(rows[6] + 13)
    result.append(rows[0] + 14)
    result.append(rows[1] + 15)
    result.append(rows[2] + 16)
    result.append(rows[3] + 17)
    result.append(rows[4] + 18)
    result.append(rows[5] + 19)
    result.append(rows[6] + 20)
    result.append(rows[0] + 21)
    result.append(rows[1] + 22)
    result.append(rows[2] + 23)
    result.append(rows[3] + 24)
    result.append(rows[4] + 25)
    result.append(rows[5] + 26)
    result.append(rows[6] + 27)
    result.append(rows[0] + 28)
    result.append(rows[1] + 29)
    result.append(rows[2] + 30)
    result.append(rows[3] + 31)
    result.append(rows[4] + 32)
    result.append(rows[5] + 33)
    result.append(rows[6] + 34)
    result.append(rows[0] + 35)
    result.append(rows[1] + 36)
    result.append(rows[2] + 37)
    result.append(rows[3] + 38)
    result.append(rows[4] + 39)
    result.append(rows[5] + 40)
    result.append(rows[6] + 41)
    result.append(rows[0] + 42)
    result.append(rows[1] + 43)
    result.append(rows[2] + 44)
    result.append(rows[3] + 45)
    result.append(rows[4] + 46)
    result.append(rows[5] + 47)
    result.append(rows[6] + 48)
    result.append(rows[0] + 49)
    result.append(rows[1] + 50)
    result.append(rows[2] + 51)
    result.append(rows[3] + 52)
    result.append(rows[4] + 53)
    result.append(rows[5] + 54)
    result.append(rows[6] + 55)
    result.append(rows[0] + 56)
    result.append(rows[1] + 57)
    result.append(rows[2] + 58)
    result.append(rows[3] + 59)
    result.append(rows[4] + 60)
    result.append(rows[5] + 61)
    result.append(rows[6] + 62)
    result.append(rows[0] + 63)
    result.append(rows[1] + 64)
    result.append(rows[2] + 65)
    result.append(rows[3] + 66)
    result.append(rows[4] + 67)
    result.append(rows[5] + 68)
    result.append(rows[6] + 69)
    result.append(rows[0] + 70)
    result.append(rows[1] + 71)
    result.append(rows[2] + 72)
    result.append(rows[3] + 73)
    result.append(rows[4] + 74)
    result.append(rows[5] + 75)
    result.append(rows[6] + 76)
    result.append(rows[0] + 77)
    result.append(rows[1] + 78)
    result.append(rows[2] + 79)
    result.append(rows[3] + 80)
    result.append(rows[4] + 81)
    result.append(rows[5] + 82)
    result.append(rows[6] + 83)
    result.append(rows[0] + 84)
    result.append(rows[1] + 85)
    result.append(rows[2] + 86)
    result.append(rows[3] + 87)
    result.append(rows[4] + 88)
    result.append(rows[5] + 89)
    result.append(rows[6] + 90)
    result.append(rows[0] + 91)
    result.append(rows[1] + 92)
    result.append(rows[2] + 93)
    result.append(rows[3] + 94)
    result.append(rows[4] + 95)
    result.append(rows[5] + 96)
    result.append(rows[6] + 97)
    result.append(rows[0] + 98)
    result.append(rows[1] + 99)
    result.append(rows[2] + 100)
    result.append(rows[3] + 101)
    result.append(rows[4] + 102)
    result.append(rows[5] + 103)
    result.append(rows[6] + 104)
    result.append(rows[0] + 105)
    result.append(rows[1] + 106)
    result.append(rows[2] + 107)
    result.append(rows[3] + 108)
    result.append(rows[4] + 109)
    return result
