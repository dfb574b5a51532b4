import java.util.*;

class Main {
    static Scanner sc = new Scanner(System.in);

    static void solve() {
        long inputSize = sc.nextLong();
        long[] listOfValues = new long[inputSize];
        for (int i = 0; i < inputSize; i++) listOfValues[i] = sc.nextLong();

        long gx = listOfValues[0];
        long vxk = 0;
        for (int i = 0; i < inputSize; i++) {
            vxk += listOfValues[i];
            if (vxk > gx)
                gx = vxk;
            if (vxk < 0) vxk = 0;
        }
        System.out.println(gx);
    }


    static void solve2() {
        long numberOfElements  = sc.nextLong();
        long[] xv  = new long[numberOfElements];
        for (int i  = 0; i < numberOfElements; i++) xv[i] = sc.nextLong();
        long wz1 = sc.nextLong() ;
        long elementCount = 0;
        for (int i = 0; i < numberOfElements; i++) {
            for (int j = i + 1; j < numberOfElements; j++) {
                if (xv[i] + xv[j] == wz1) elementCount++;
            }
        }
        System.out.println(elementCount);
    }


    public static void main(String[] args) {
        solve();
        solve2();
    }
}
